//! Structure theory of shapes: goodness, the pseudo-MV condition,
//! connectivity and subdirect irreducibility, canonical classification,
//! decomposition into components, Boolean elements, one-dimensional
//! rotations and bounded normal-filter reachability.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::element::{Element, Side};
use crate::error::KiteError;
use crate::grid::grid;
use crate::lgroup::{GroupVector, Int};
use crate::ops::BinOp;
use crate::shape::{FiniteMaps, Shape, ShapeKind};

fn need_finite(shape: &Shape) -> Result<&FiniteMaps, KiteError> {
    shape
        .finite_maps()
        .ok_or_else(|| KiteError::Precondition(format!("{shape} is not a finite shape")))
}

/// Every finite shape with |I| ≤ `max_i` and |J| ≤ |I|, over ℤ, listing
/// each pair of injections once.
pub fn finite_shapes(max_i: usize) -> Vec<Shape> {
    fn injections(j: usize, i: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn go(j: usize, i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == j {
                out.push(cur.clone());
                return;
            }
            for v in 0..i {
                if !cur.contains(&v) {
                    cur.push(v);
                    go(j, i, cur, out);
                    cur.pop();
                }
            }
        }
        go(j, i, &mut cur, &mut out);
        out
    }
    let mut out = Vec::new();
    for i in 0..=max_i {
        for j in 0..=i {
            let maps = injections(j, i);
            for lam in &maps {
                for rho in &maps {
                    out.push(Shape::finite(i, j, lam.clone(), rho.clone(), 1).expect("injections"));
                }
            }
        }
    }
    out
}

/// λ(J) = ρ(J).
pub fn is_good_shape(shape: &Shape) -> bool {
    match shape.kind() {
        ShapeKind::Finite(f) => {
            let l: BTreeSet<_> = f.lambda().iter().collect();
            let r: BTreeSet<_> = f.rho().iter().collect();
            l == r
        }
        ShapeKind::ZZ01 => true,
        ShapeKind::OmegaOmega01 | ShapeKind::OmegaOmega10 => false,
    }
}

/// λ(J) = I = ρ(J).
pub fn is_psmv_shape(shape: &Shape) -> bool {
    match shape.kind() {
        ShapeKind::Finite(f) => f.i_size() == f.j_size(),
        ShapeKind::ZZ01 => true,
        ShapeKind::OmegaOmega01 | ShapeKind::OmegaOmega10 => false,
    }
}

/// A vertex of the incidence graph on I ⊎ J.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    I(usize),
    J(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::I(i) => write!(f, "i{i}"),
            Vertex::J(j) => write!(f, "j{j}"),
        }
    }
}

/// Connected components of the graph with edges j-λ(j) and j-ρ(j).
/// Blocks are sorted, and ordered by their least vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    pub blocks: Vec<Vec<Vertex>>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn i_indices(&self, block: usize) -> Vec<usize> {
        self.blocks[block]
            .iter()
            .filter_map(|v| match v {
                Vertex::I(i) => Some(*i),
                Vertex::J(_) => None,
            })
            .collect()
    }

    pub fn j_indices(&self, block: usize) -> Vec<usize> {
        self.blocks[block]
            .iter()
            .filter_map(|v| match v {
                Vertex::J(j) => Some(*j),
                Vertex::I(_) => None,
            })
            .collect()
    }

    /// The block containing I-index `i`.
    pub fn block_of_i(&self, i: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&Vertex::I(i)))
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn components(shape: &Shape) -> Result<ComponentPartition, KiteError> {
    let f = need_finite(shape)?;
    let (ni, nj) = (f.i_size(), f.j_size());
    let mut parent: Vec<usize> = (0..ni + nj).collect();
    for j in 0..nj {
        for i in [f.lambda()[j], f.rho()[j]] {
            let a = find(&mut parent, ni + j);
            let b = find(&mut parent, i);
            parent[a] = b;
        }
    }
    let mut groups: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
    for v in 0..ni + nj {
        let root = find(&mut parent, v);
        let vertex = if v < ni { Vertex::I(v) } else { Vertex::J(v - ni) };
        groups.entry(root).or_default().push(vertex);
    }
    let mut blocks: Vec<Vec<Vertex>> = groups.into_values().collect();
    for b in &mut blocks {
        b.sort();
    }
    blocks.sort();
    Ok(ComponentPartition { blocks })
}

/// For all i, j ∈ I some m ≤ |I| has (ρ∘λ⁻¹)^m(i) = j or (λ∘ρ⁻¹)^m(i) = j,
/// iterating the partial maps until they become undefined.
pub fn si_condition(shape: &Shape) -> Result<bool, KiteError> {
    let f = need_finite(shape)?;
    let n = f.i_size();
    let forward = |i: usize| f.lambda_inv(i).map(|j| f.rho()[j]);
    let backward = |i: usize| f.rho_inv(i).map(|j| f.lambda()[j]);
    for i in 0..n {
        let mut reached = vec![false; n];
        for step in [&forward as &dyn Fn(usize) -> Option<usize>, &backward] {
            let mut cur = Some(i);
            for _ in 0..=n {
                match cur {
                    Some(k) => {
                        reached[k] = true;
                        cur = step(k);
                    }
                    None => break,
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Isomorphism types of subdirectly irreducible kites over ℤ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeTag {
    /// K_{n,n} with λ(j) = j, ρ(j) = j+1 mod n.
    Type1(usize),
    /// K_{ℤ,ℤ}^{0,1}.
    Type2,
    /// K_{ω,ω}^{0,1}.
    Type3,
    /// K_{ω,ω}^{1,0}.
    Type4,
    /// K_{n+1,n} with λ(j) = j, ρ(j) = j+1.
    Type5(usize),
    NotSI,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::Type1(n) => write!(f, "Type1({n})"),
            TypeTag::Type2 => f.write_str("Type2"),
            TypeTag::Type3 => f.write_str("Type3"),
            TypeTag::Type4 => f.write_str("Type4"),
            TypeTag::Type5(n) => write!(f, "Type5({n})"),
            TypeTag::NotSI => f.write_str("NotSI"),
        }
    }
}

impl TypeTag {
    /// The canonical shape of the tag over ℤ^dim.
    pub fn canonical_shape(self, dim: usize) -> Option<Shape> {
        match self {
            TypeTag::Type1(n) => Some(Shape::cycle(n).with_dim(dim)),
            TypeTag::Type5(n) => Some(Shape::chain(n).with_dim(dim)),
            TypeTag::Type2 => Some(Shape::zz01(dim)),
            TypeTag::Type3 => Some(Shape::omega01(dim)),
            TypeTag::Type4 => Some(Shape::omega10(dim)),
            TypeTag::NotSI => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    pub si: bool,
    pub tag: TypeTag,
    /// Renumbering `(σ on I, τ on J)` taking the shape to its canonical
    /// form via [`Shape::renumber`].
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
    pub reason: String,
}

fn not_si(reason: String) -> ClassificationResult {
    ClassificationResult {
        si: false,
        tag: TypeTag::NotSI,
        witness: None,
        reason,
    }
}

pub fn classify(shape: &Shape) -> ClassificationResult {
    let dim = shape.dim();
    if dim >= 2 {
        return not_si(format!("Z^{dim} is not subdirectly irreducible"));
    }
    let f = match shape.kind() {
        ShapeKind::ZZ01 => return si_tag(TypeTag::Type2, None, "canonical infinite shape"),
        ShapeKind::OmegaOmega01 => return si_tag(TypeTag::Type3, None, "canonical infinite shape"),
        ShapeKind::OmegaOmega10 => return si_tag(TypeTag::Type4, None, "canonical infinite shape"),
        ShapeKind::Finite(f) => f,
    };
    if dim == 0 {
        return si_tag(TypeTag::Type1(0), None, "trivial group: two-element Boolean algebra");
    }
    if !si_condition(shape).expect("finite") {
        let parts = components(shape).expect("finite").len();
        return not_si(format!("{parts} connected components"));
    }
    let (ni, nj) = (f.i_size(), f.j_size());
    let mut sigma = vec![usize::MAX; ni];
    let mut tau = vec![usize::MAX; nj];
    if ni == nj {
        // σ = ρ∘λ⁻¹ is a single cycle; number I along it starting at 0.
        let mut i = 0;
        for k in 0..ni {
            sigma[i] = k;
            let j = f.lambda_inv(i).expect("bijective");
            tau[j] = k;
            i = f.rho()[j];
        }
        let w = (sigma, tau);
        si_tag(TypeTag::Type1(ni), Some(w), "cycle numbering")
    } else {
        // A path: start at the index outside ρ(J), alternate λ⁻¹ and ρ.
        let mut i = (0..ni).find(|&i| f.rho_inv(i).is_none()).expect("path start");
        for k in 0..ni {
            sigma[i] = k;
            match f.lambda_inv(i) {
                Some(j) => {
                    tau[j] = k;
                    i = f.rho()[j];
                }
                None => break,
            }
        }
        si_tag(TypeTag::Type5(nj), Some((sigma, tau)), "path numbering")
    }
}

fn si_tag(tag: TypeTag, witness: Option<(Vec<usize>, Vec<usize>)>, reason: &str) -> ClassificationResult {
    ClassificationResult {
        si: true,
        tag,
        witness,
        reason: reason.into(),
    }
}

/// A component of a finite shape as a kite of its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub i_indices: Vec<usize>,
    pub j_indices: Vec<usize>,
    pub shape: Shape,
    pub classification: ClassificationResult,
}

impl Factor {
    /// Restriction of `x` to this component.
    pub fn project(&self, x: &Element) -> Element {
        let entries = x.dense_entries().expect("finite shape element");
        let idx = match x.side() {
            Side::Upper => &self.i_indices,
            Side::Lower => &self.j_indices,
        };
        let local = idx.iter().map(|&k| entries[k].clone()).collect();
        self.shape
            .element(x.side(), local)
            .expect("restriction stays in the cone")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub factors: Vec<Factor>,
    pub bound: u32,
    pub grid_size: usize,
    /// Distinct grid elements have distinct images.
    pub injective: bool,
    /// First `(op, x, y)` whose image is not the componentwise result.
    pub violation: Option<(String, Element, Element)>,
}

impl Decomposition {
    pub fn preserves_operations(&self) -> bool {
        self.violation.is_none()
    }

    pub fn project(&self, x: &Element) -> Vec<Element> {
        self.factors.iter().map(|f| f.project(x)).collect()
    }
}

/// Splits a finite shape into its components and verifies on the
/// `bound`-grid that x ↦ (π_C(x))_C is injective and preserves the
/// operations and constants. A connected shape is its own single factor.
pub fn decompose(shape: &Shape, bound: u32) -> Result<Decomposition, KiteError> {
    let f = need_finite(shape)?;
    let parts = components(shape)?;
    let mut factors = Vec::new();
    if parts.len() <= 1 {
        factors.push(Factor {
            i_indices: (0..f.i_size()).collect(),
            j_indices: (0..f.j_size()).collect(),
            shape: shape.clone(),
            classification: classify(shape),
        });
    } else {
        for b in 0..parts.len() {
            let is = parts.i_indices(b);
            let js = parts.j_indices(b);
            let local_i = |i: usize| is.iter().position(|&k| k == i).expect("same component");
            let lam = js.iter().map(|&j| local_i(f.lambda()[j])).collect();
            let rho = js.iter().map(|&j| local_i(f.rho()[j])).collect();
            let sub = Shape::finite(is.len(), js.len(), lam, rho, shape.dim())?;
            factors.push(Factor {
                classification: classify(&sub),
                i_indices: is,
                j_indices: js,
                shape: sub,
            });
        }
    }
    let mut d = Decomposition {
        factors,
        bound,
        grid_size: 0,
        injective: true,
        violation: None,
    };
    let g = grid(shape, bound)?;
    d.grid_size = g.len();
    let images: Vec<Vec<Element>> = g.iter().map(|x| d.project(x)).collect();
    let distinct: BTreeSet<String> = images
        .iter()
        .map(|im| im.iter().map(|e| format!("{e};")).collect())
        .collect();
    d.injective = distinct.len() == g.len();

    let consts = [
        ("one", shape.one(), Shape::one as fn(&Shape) -> Element),
        ("zero", shape.zero(), Shape::zero),
    ];
    for (name, c, make) in consts {
        let im = d.project(&c);
        if d.factors.iter().zip(&im).any(|(fa, e)| *e != make(&fa.shape)) {
            d.violation = Some((name.into(), c.clone(), c));
            return Ok(d);
        }
    }
    for (a, x) in g.iter().enumerate() {
        for (b, y) in g.iter().enumerate() {
            for op in BinOp::ALL {
                let whole = d.project(&shape.apply(op, x, y)?);
                for (k, fa) in d.factors.iter().enumerate() {
                    if fa.shape.apply(op, &images[a][k], &images[b][k])? != whole[k] {
                        d.violation = Some((op.name().into(), x.clone(), y.clone()));
                        return Ok(d);
                    }
                }
            }
        }
    }
    Ok(d)
}

/// Grid elements that are idempotent and satisfy ~-x = x = -~x.
pub fn boolean_elements(shape: &Shape, bound: u32) -> Result<Vec<Element>, KiteError> {
    let mut out = Vec::new();
    for x in grid(shape, bound)? {
        if shape.mul(&x, &x)? == x && shape.lneg(&shape.rneg(&x)?)? == x && shape.rneg(&shape.lneg(&x)?)? == x {
            out.push(x);
        }
    }
    Ok(out)
}

/// One rotation claim: a property of the double negations
/// against the index condition that should be equivalent to it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClaimCheck {
    pub property: bool,
    pub condition: bool,
}

impl ClaimCheck {
    pub fn agrees(&self) -> bool {
        self.property == self.condition
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationReport {
    pub index: i64,
    pub ln_ln: Element,
    pub rn_ln: Element,
    pub ln_rn: Element,
    pub rn_rn: Element,
    /// All four double negations have at most one non-`e` entry.
    pub at_most_one_dimensional: bool,
    /// When λ⁻¹(i) and ρ⁻¹(i) are both defined, all four are exactly
    /// one-dimensional (vacuously true otherwise).
    pub exact_when_defined: bool,
    /// The six claims, in order:
    /// 1. ln ln a < 1 and rn ln a < 1 iff λ⁻¹(i) defined
    /// 2. rn rn a < 1 and ln rn a < 1 iff ρ⁻¹(i) defined
    /// 3. rn ln a = a iff λ⁻¹(i) defined
    /// 4. ln rn a = a iff ρ⁻¹(i) defined
    /// 5. ln ln a ∨ a = 1 iff ρ(λ⁻¹(i)) ≠ i
    /// 6. rn rn a ∨ a = 1 iff λ(ρ⁻¹(i)) ≠ i
    pub claims: [ClaimCheck; 6],
}

impl RotationReport {
    pub fn all_agree(&self) -> bool {
        self.at_most_one_dimensional && self.exact_when_defined && self.claims.iter().all(ClaimCheck::agrees)
    }
}

pub fn rotation_report(shape: &Shape, a: &Element) -> Result<RotationReport, KiteError> {
    shape.conforms(a)?;
    let support = a.support();
    if !a.is_upper() || support.len() != 1 {
        return Err(KiteError::Precondition(format!(
            "{a} is not a one-dimensional upper element"
        )));
    }
    let i = support[0];
    let one = shape.one();
    let lt1 = |x: &Element| -> Result<bool, KiteError> { Ok(shape.leq(x, &one)? && *x != one) };
    let ln_a = shape.lneg(a)?;
    let rn_a = shape.rneg(a)?;
    let ln_ln = shape.lneg(&ln_a)?;
    let rn_ln = shape.rneg(&ln_a)?;
    let ln_rn = shape.lneg(&rn_a)?;
    let rn_rn = shape.rneg(&rn_a)?;
    let lam_inv = shape.lambda_inv(i);
    let rho_inv = shape.rho_inv(i);
    let four = [&ln_ln, &rn_ln, &ln_rn, &rn_rn];
    let at_most = four.iter().all(|x| x.dimension() <= 1);
    let exact = lam_inv.is_none() || rho_inv.is_none() || four.iter().all(|x| x.dimension() == 1);
    let claims = [
        ClaimCheck {
            property: lt1(&ln_ln)? && lt1(&rn_ln)?,
            condition: lam_inv.is_some(),
        },
        ClaimCheck {
            property: lt1(&rn_rn)? && lt1(&ln_rn)?,
            condition: rho_inv.is_some(),
        },
        ClaimCheck {
            property: rn_ln == *a,
            condition: lam_inv.is_some(),
        },
        ClaimCheck {
            property: ln_rn == *a,
            condition: rho_inv.is_some(),
        },
        ClaimCheck {
            property: shape.join(&ln_ln, a)? == one,
            condition: lam_inv.and_then(|j| shape.rho(j)) != Some(i),
        },
        ClaimCheck {
            property: shape.join(&rn_rn, a)? == one,
            condition: rho_inv.and_then(|j| shape.lambda(j)) != Some(i),
        },
    ];
    Ok(RotationReport {
        index: i,
        ln_ln,
        rn_ln,
        ln_rn,
        rn_rn,
        at_most_one_dimensional: at_most,
        exact_when_defined: exact,
        claims,
    })
}

/// Upper elements of the `bound`-box that differ from `x` by one step
/// towards `e` in a single coordinate.
fn upward_steps(shape: &Shape, x: &Element) -> Vec<(String, Element)> {
    let mut out = Vec::new();
    let entries = match x.dense_entries() {
        Some(e) => e,
        None => return out,
    };
    for (i, g) in entries.iter().enumerate() {
        for c in 0..g.dim() {
            if g.coords()[c].is_negative() {
                let mut coords: Vec<Int> = g.coords().to_vec();
                coords[c] = &coords[c] + &Int::Small(1);
                let mut e = entries.to_vec();
                e[i] = GroupVector::new(coords);
                out.push((
                    format!("up at {i}"),
                    shape.element(Side::Upper, e).expect("still in G-"),
                ));
            }
        }
    }
    out
}

fn in_box(x: &Element, bound: u32) -> bool {
    x.max_abs() <= Int::Small(bound as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reach {
    Reached,
    NotReached,
    /// The closure outgrew the budget before the target was found.
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterStep {
    pub rule: String,
    pub element: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterReport {
    pub outcome: Reach,
    /// Derivation from the seed to the target (seed first) when reached.
    pub trace: Vec<FilterStep>,
    /// Size of the closure computed.
    pub explored: usize,
}

/// Generator steps from `x` that do not involve other closure members:
/// conjugates by every grid element, the four double negations, and the
/// upward steps.
fn unary_steps(shape: &Shape, x: &Element, ys: &[Element]) -> Result<Vec<(String, Element)>, KiteError> {
    let mut out = Vec::new();
    for y in ys {
        let c = shape.conjugates(x, y)?;
        out.push((format!("left conjugate by {y}"), c.left));
        out.push((format!("right conjugate by {y}"), c.right));
    }
    let ln = shape.lneg(x)?;
    let rn = shape.rneg(x)?;
    out.push(("ln ln".into(), shape.lneg(&ln)?));
    out.push(("rn ln".into(), shape.rneg(&ln)?));
    out.push(("ln rn".into(), shape.lneg(&rn)?));
    out.push(("rn rn".into(), shape.rneg(&rn)?));
    out.extend(upward_steps(shape, x));
    Ok(out)
}

/// Bounded-box search for `target` in the normal filter generated by
/// `seed`: the closure under conjugation by grid elements, double
/// negations, products, meets and upward steps, discarding anything that
/// leaves the box or the upper summand. `budget` caps the closure size.
pub fn filter_reach(
    shape: &Shape,
    seed: &Element,
    target: &Element,
    bound: u32,
    budget: usize,
) -> Result<FilterReport, KiteError> {
    shape.conforms(seed)?;
    shape.conforms(target)?;
    if !seed.is_upper() || !target.is_upper() {
        return Err(KiteError::Precondition("seed and target must be upper elements".into()));
    }
    let ys = grid(shape, bound)?;
    let mut members: Vec<Element> = vec![seed.clone()];
    let mut parent: Vec<Option<(usize, String)>> = vec![None];
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    index.insert(format!("{seed}"), 0);
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    let trace = |members: &Vec<Element>, parent: &Vec<Option<(usize, String)>>, mut k: usize| {
        let mut out = Vec::new();
        loop {
            match &parent[k] {
                Some((p, rule)) => {
                    out.push(FilterStep {
                        rule: rule.clone(),
                        element: members[k].clone(),
                    });
                    k = *p;
                }
                None => {
                    out.push(FilterStep {
                        rule: "seed".into(),
                        element: members[k].clone(),
                    });
                    break;
                }
            }
        }
        out.reverse();
        out
    };
    if seed == target {
        return Ok(FilterReport {
            outcome: Reach::Reached,
            trace: trace(&members, &parent, 0),
            explored: 1,
        });
    }
    while let Some(k) = queue.pop_front() {
        let x = members[k].clone();
        let mut next = unary_steps(shape, &x, &ys)?;
        for (m, z) in members.iter().enumerate().take(k + 1) {
            next.push((format!("product with #{m}"), shape.mul(&x, z)?));
            next.push((format!("product by #{m}"), shape.mul(z, &x)?));
            next.push((format!("meet with #{m}"), shape.meet(&x, z)?));
        }
        for (rule, y) in next {
            if !y.is_upper() || !in_box(&y, bound) {
                continue;
            }
            let key = format!("{y}");
            if index.contains_key(&key) {
                continue;
            }
            if members.len() >= budget {
                return Ok(FilterReport {
                    outcome: Reach::Indeterminate,
                    trace: Vec::new(),
                    explored: members.len(),
                });
            }
            index.insert(key, members.len());
            members.push(y.clone());
            parent.push(Some((k, rule)));
            if y == *target {
                let t = trace(&members, &parent, members.len() - 1);
                return Ok(FilterReport {
                    outcome: Reach::Reached,
                    trace: t,
                    explored: members.len(),
                });
            }
            queue.push_back(members.len() - 1);
        }
    }
    Ok(FilterReport {
        outcome: Reach::NotReached,
        trace: Vec::new(),
        explored: members.len(),
    })
}

/// First `(u, rule, result)` where a generator step applied to a grid upper
/// element supported inside one component produces an element with support
/// outside that component.
pub fn component_invariance_violation(
    shape: &Shape,
    bound: u32,
) -> Result<Option<(Element, String, Element)>, KiteError> {
    let parts = components(shape)?;
    let g = grid(shape, bound)?;
    for u in g.iter().filter(|x| x.is_upper()) {
        let blocks: BTreeSet<usize> = u
            .support()
            .iter()
            .map(|&i| parts.block_of_i(i as usize).expect("index in some block"))
            .collect();
        if blocks.len() > 1 {
            continue;
        }
        for (rule, r) in unary_steps(shape, u, &g)? {
            let ok = r
                .support()
                .iter()
                .all(|&i| parts.block_of_i(i as usize).is_some_and(|b| blocks.contains(&b)));
            if !ok || !r.is_upper() {
                return Ok(Some((u.clone(), rule, r)));
            }
        }
    }
    Ok(None)
}

/// Membership in N^I for N = (mℤ)⁻: every coordinate divisible by `m`.
pub fn ni_membership(x: &Element, m: u64) -> Result<bool, KiteError> {
    if !x.is_upper() {
        return Err(KiteError::Precondition(format!("{x} is not an upper element")));
    }
    if m == 0 {
        return Err(KiteError::Precondition("the modulus must be at least 1".into()));
    }
    let entries: Vec<&GroupVector> = match (x.dense_entries(), x.sparse_entries()) {
        (Some(d), _) => d.iter().collect(),
        (None, Some(s)) => s.values().collect(),
        (None, None) => Vec::new(),
    };
    Ok(entries
        .iter()
        .all(|g| g.coords().iter().all(|c| c.divisible_by(&Int::Small(m as i64)))))
}

/// First `(x, y, conjugate)` with `x ∈ N^I` on the grid whose left or right
/// conjugate by the grid element `y` leaves N^I.
pub fn ni_conjugation_violation(
    shape: &Shape,
    bound: u32,
    m: u64,
) -> Result<Option<(Element, Element, Element)>, KiteError> {
    let g = grid(shape, bound)?;
    for x in g.iter().filter(|x| x.is_upper()) {
        if !ni_membership(x, m)? {
            continue;
        }
        for y in &g {
            let c = shape.conjugates(x, y)?;
            for z in [c.left, c.right] {
                if !z.is_upper() || !ni_membership(&z, m)? {
                    return Ok(Some((x.clone(), y.clone(), z)));
                }
            }
        }
    }
    Ok(None)
}

/// First `(x, y)` with x upper and y lower on the grid where a conjugate of
/// x by y is not upper.
pub fn upper_conjugation_violation(shape: &Shape, bound: u32) -> Result<Option<(Element, Element)>, KiteError> {
    let g = grid(shape, bound)?;
    for x in g.iter().filter(|x| x.is_upper()) {
        for y in g.iter().filter(|y| y.is_lower()) {
            let c = shape.conjugates(x, y)?;
            if !c.left.is_upper() || !c.right.is_upper() {
                return Ok(Some((x.clone(), y.clone())));
            }
        }
    }
    Ok(None)
}

/// Upper element with every entry in the coordinate subgroup
/// M_s = {v : v_t = 0 for t ≠ s}.
fn in_coordinate_filter(x: &Element, s: usize) -> bool {
    x.is_upper()
        && x.dense_entries()
            .map(|es| {
                es.iter()
                    .all(|g| g.coords().iter().enumerate().all(|(t, c)| t == s || c.is_zero()))
            })
            .unwrap_or(false)
}

/// Subdirect witness for ℤ^d with d ≥ 2: the filters (M_s⁻)^I of the
/// coordinate subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdirectWitness {
    /// Per coordinate s: grid members of (M_s⁻)^I and whether they are
    /// closed under conjugation by grid elements.
    pub filters: Vec<(usize, bool)>,
    /// Grid elements lying in every (M_s⁻)^I.
    pub intersection: Vec<Element>,
}

impl SubdirectWitness {
    /// Nontrivial normal filters with trivial intersection.
    pub fn holds(&self, shape: &Shape) -> bool {
        self.filters.iter().all(|&(n, closed)| n > 1 && closed) && self.intersection == [shape.one()]
    }
}

pub fn subdirect_witness(shape: &Shape, bound: u32) -> Result<SubdirectWitness, KiteError> {
    let d = shape.dim();
    if d < 2 {
        return Err(KiteError::Precondition("needs a group Z^d with d >= 2".into()));
    }
    let g = grid(shape, bound)?;
    let mut filters = Vec::new();
    for s in 0..d {
        let members: Vec<&Element> = g.iter().filter(|x| in_coordinate_filter(x, s)).collect();
        let mut closed = true;
        'outer: for x in &members {
            for y in &g {
                let c = shape.conjugates(x, y)?;
                if !in_coordinate_filter(&c.left, s) || !in_coordinate_filter(&c.right, s) {
                    closed = false;
                    break 'outer;
                }
            }
        }
        filters.push((members.len(), closed));
    }
    let intersection = g
        .iter()
        .filter(|x| (0..d).all(|s| in_coordinate_filter(x, s)))
        .cloned()
        .collect();
    Ok(SubdirectWitness { filters, intersection })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn k21() -> Shape {
        Shape::chain(1)
    }

    fn k(i: usize, j: usize, lam: &[usize], rho: &[usize]) -> Shape {
        Shape::finite(i, j, lam.to_vec(), rho.to_vec(), 1).unwrap()
    }

    #[test]
    fn census_size() {
        assert_eq!(finite_shapes(3).len(), 94);
    }

    #[test]
    fn predicates() {
        assert!(!is_good_shape(&k21()));
        assert!(is_good_shape(&Shape::diagonal(2)));
        assert!(is_good_shape(&k(0, 0, &[], &[])));
        assert!(is_psmv_shape(&Shape::diagonal(1)));
        assert!(!is_psmv_shape(&k21()));
        assert!(is_psmv_shape(&Shape::zz01(1)));
        assert!(!is_good_shape(&Shape::omega10(1)));
    }

    #[test]
    fn component_examples() {
        let p = components(&Shape::diagonal(2)).unwrap();
        assert_eq!(
            p.blocks,
            vec![vec![Vertex::I(0), Vertex::J(0)], vec![Vertex::I(1), Vertex::J(1)]]
        );
        assert_eq!(components(&k21()).unwrap().len(), 1);
        assert!(components(&k(0, 0, &[], &[])).unwrap().is_empty());
    }

    #[test]
    fn si_examples() {
        assert!(si_condition(&k(2, 2, &[0, 1], &[1, 0])).unwrap());
        assert!(!si_condition(&Shape::diagonal(2)).unwrap());
        for n in 0..=4 {
            assert!(si_condition(&Shape::chain(n)).unwrap());
        }
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&Shape::diagonal(1)).tag, TypeTag::Type1(1));
        assert_eq!(classify(&k21()).tag, TypeTag::Type5(1));
        let swap = classify(&k(2, 2, &[0, 1], &[1, 0]));
        assert_eq!(swap.tag, TypeTag::Type1(2));
        assert_eq!(swap.witness.as_ref().unwrap().0, vec![0, 1]);
        assert_eq!(classify(&Shape::diagonal(2)).tag, TypeTag::NotSI);
        assert_eq!(classify(&k21().with_dim(2)).tag, TypeTag::NotSI);
        assert_eq!(classify(&Shape::omega10(1)).tag, TypeTag::Type4);
        let odd = k(3, 2, &[2, 0], &[1, 2]);
        let c = classify(&odd);
        assert_eq!(c.tag, TypeTag::Type5(2));
        let (s, t) = c.witness.unwrap();
        assert_eq!(odd.renumber(&s, &t).unwrap(), Shape::chain(2));
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose(&Shape::diagonal(2), 2).unwrap();
        assert_eq!(d.factors.len(), 2);
        assert!(d.factors.iter().all(|f| f.shape == Shape::diagonal(1)));
        assert!(d.injective && d.preserves_operations());

        let d = decompose(&k(3, 2, &[0, 1], &[1, 0]), 1).unwrap();
        let shapes: Vec<_> = d.factors.iter().map(|f| f.shape.to_string()).collect();
        assert_eq!(
            shapes,
            ["kite{I=2,J=2,lam=[0,1],rho=[1,0]}", "kite{I=1,J=0,lam=[],rho=[]}"]
        );
        assert!(d.injective && d.preserves_operations());

        let d = decompose(&k21(), 1).unwrap();
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].shape, k21());
    }

    #[test]
    fn boolean_elements_are_the_constants() {
        let s = k21();
        assert_eq!(boolean_elements(&s, 3).unwrap(), vec![s.zero(), s.one()]);
        let e = k(0, 0, &[], &[]);
        assert_eq!(boolean_elements(&e, 1).unwrap(), vec![e.zero(), e.one()]);
    }

    #[test]
    fn rotation_examples() {
        let s = k21();
        let r = rotation_report(&s, &s.upper(&[-1, 0]).unwrap()).unwrap();
        assert!(r.claims[2].property && r.claims[2].condition);
        assert!(r.claims[4].property && r.claims[4].condition);
        assert_eq!(r.ln_ln, s.upper(&[0, -1]).unwrap());
        assert!(r.all_agree());
        let r = rotation_report(&s, &s.upper(&[0, -1]).unwrap()).unwrap();
        assert!(!r.claims[0].property && !r.claims[0].condition);
        assert_eq!(r.ln_ln, s.one());
        assert!(rotation_report(&s, &s.upper(&[-1, -1]).unwrap()).is_err());
    }

    #[test]
    fn filter_examples() {
        let s = k21();
        let r = filter_reach(&s, &s.upper(&[-1, 0]).unwrap(), &s.upper(&[0, -1]).unwrap(), 2, 1000).unwrap();
        assert_eq!(r.outcome, Reach::Reached);
        assert_eq!(r.trace.last().unwrap().element, s.upper(&[0, -1]).unwrap());

        let d = Shape::diagonal(2);
        let r = filter_reach(&d, &d.upper(&[-1, 0]).unwrap(), &d.upper(&[0, -1]).unwrap(), 2, 1000).unwrap();
        assert_eq!(r.outcome, Reach::NotReached);
        let r = filter_reach(&d, &d.upper(&[-1, 0]).unwrap(), &d.one(), 2, 1000).unwrap();
        assert_eq!(r.outcome, Reach::Reached);
        let r = filter_reach(&d, &d.upper(&[-2, 0]).unwrap(), &d.upper(&[0, -1]).unwrap(), 2, 1).unwrap();
        assert_eq!(r.outcome, Reach::Indeterminate);
    }

    #[test]
    fn filter_closure_properties() {
        let d = Shape::diagonal(2);
        assert_eq!(component_invariance_violation(&d, 2).unwrap(), None);
        assert_eq!(
            component_invariance_violation(&k(3, 2, &[0, 1], &[1, 0]), 1).unwrap(),
            None
        );
        assert_eq!(upper_conjugation_violation(&k21(), 2).unwrap(), None);
        let s = k21();
        assert_eq!(ni_conjugation_violation(&s, 3, 1).unwrap(), None);
        // 2ℤ is not convex, so (2ℤ)⁻ does not give a normal filter.
        assert_eq!(
            ni_conjugation_violation(&s, 2, 2).unwrap(),
            Some((
                s.upper(&[0, -2]).unwrap(),
                s.lower(&[1]).unwrap(),
                s.upper(&[-1, 0]).unwrap()
            ))
        );
        assert!(ni_membership(&s.upper(&[-2, -4]).unwrap(), 2).unwrap());
        assert!(!ni_membership(&s.upper(&[-1, -2]).unwrap(), 2).unwrap());
        assert!(ni_membership(&s.zero(), 2).is_err());
    }

    #[test]
    fn d2_subdirect_witness() {
        let s = k21().with_dim(2);
        let w = subdirect_witness(&s, 1).unwrap();
        assert!(w.holds(&s));
        assert_eq!(w.filters, vec![(4, true), (4, true)]);
    }
}
