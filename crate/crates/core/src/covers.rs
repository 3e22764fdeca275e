//! The ℤ_n^† family K_{n+1,n}^{0,1}(ℤ) and the negation-iterate facts that
//! separate the varieties it generates.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::catalog::catalog_identity;
use crate::check::{check_identity, CheckReport};
use crate::element::{Element, Side};
use crate::error::KiteError;
use crate::grid::grid;
use crate::lgroup::{GroupVector, Int};
use crate::ops::BinOp;
use crate::shape::Shape;

/// ℤ_n^†: K_{n+1,n} with λ(j) = j, ρ(j) = j+1 over ℤ; for n = 0 the same
/// shape over the trivial group (the two-element Boolean algebra).
pub fn zdag(n: usize) -> Shape {
    if n == 0 {
        Shape::chain(1).with_dim(0)
    } else {
        Shape::chain(n)
    }
}

/// f_∼^k(x), the k-fold left negation.
pub fn f_sim_iterate(shape: &Shape, x: &Element, k: usize) -> Result<Element, KiteError> {
    shape.lneg_iter(x, k)
}

/// f_−^k(x), the k-fold right negation.
pub fn f_minus_iterate(shape: &Shape, x: &Element, k: usize) -> Result<Element, KiteError> {
    shape.rneg_iter(x, k)
}

fn is_constant(shape: &Shape, x: &Element) -> bool {
    *x == shape.zero() || *x == shape.one()
}

fn single_var_report(
    shape: &Shape,
    bound: u32,
    label: &str,
    mut ok: impl FnMut(&Element) -> Result<bool, KiteError>,
) -> Result<CheckReport, KiteError> {
    let g = grid(shape, bound)?;
    let mut report = CheckReport {
        identity: label.to_string(),
        shape: shape.clone(),
        bound,
        holds: true,
        counterexample: None,
        evaluations: g.len() as u128,
    };
    for (k, x) in g.iter().enumerate() {
        if !ok(x)? {
            report.holds = false;
            report.counterexample = Some(vec![("x".to_string(), x.clone())]);
            report.evaluations = k as u128 + 1;
            break;
        }
    }
    Ok(report)
}

/// x² = 0 or (ln x)² = 0 for every grid element.
pub fn check_eq2(shape: &Shape, bound: u32) -> Result<CheckReport, KiteError> {
    let zero = shape.zero();
    single_var_report(shape, bound, "x*x = 0 or ~x*~x = 0", |x| {
        let ln = shape.lneg(x)?;
        Ok(shape.mul(x, x)? == zero || shape.mul(&ln, &ln)? == zero)
    })
}

/// f_∼^exponent(x) ∈ {0, 1} for every grid element of ℤ_n^†.
pub fn check_eq3(n: usize, bound: u32, exponent: usize) -> Result<CheckReport, KiteError> {
    if n == 0 {
        return Err(KiteError::Precondition("n must be at least 1".into()));
    }
    let shape = zdag(n);
    let label = format!("f~^{exponent}(x) in {{0,1}}");
    single_var_report(&shape, bound, &label, |x| {
        Ok(is_constant(&shape, &f_sim_iterate(&shape, x, exponent)?))
    })
}

/// ⟨-1, ..., -1⟩ in ℤ_m^†.
pub fn all_minus_one(m: usize) -> Element {
    zdag(m).upper(&vec![-1; m + 1]).expect("valid upper element")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    pub n: usize,
    pub m: usize,
    pub exponent: usize,
    pub witness: Element,
    pub value: Element,
}

impl SeparationReport {
    /// The value is not Boolean, so the f~^{2n+1} law of ℤ_n^† fails in ℤ_m^†.
    pub fn separates(&self) -> bool {
        let s = zdag(self.m);
        !is_constant(&s, &self.value)
    }
}

/// Evaluates f_∼^{2n+1} at the all-(−1) upper element of ℤ_m^†.
pub fn separation_witness(n: usize, m: usize) -> Result<SeparationReport, KiteError> {
    if n == 0 || n >= m {
        return Err(KiteError::Precondition(format!("need 1 <= n < m, got n={n}, m={m}")));
    }
    let s = zdag(m);
    let x = all_minus_one(m);
    let exponent = 2 * n + 1;
    Ok(SeparationReport {
        n,
        m,
        exponent,
        value: f_sim_iterate(&s, &x, exponent)?,
        witness: x,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim1Report {
    pub gcd: Int,
    /// One-dimensional uppers ⟨-g at i⟩ and lowers ⟨g at j⟩.
    pub targets: Vec<Element>,
    pub missing: Vec<Element>,
    pub closure_size: usize,
    /// The closure was not finished within the budget.
    pub indeterminate: bool,
}

impl Claim1Report {
    pub fn contains_generators(&self) -> bool {
        !self.indeterminate && self.missing.is_empty()
    }
}

/// Closes {a, 0, 1} under the five binary operations inside the
/// `bound`-grid of ℤ_n^† and looks for the one-dimensional generators built
/// from the gcd of a's entries.
pub fn claim1_probe(n: usize, a: &Element, bound: u32, budget: usize) -> Result<Claim1Report, KiteError> {
    let shape = zdag(n);
    shape.conforms(a)?;
    if !a.is_upper() || *a == shape.one() {
        return Err(KiteError::Precondition(format!(
            "{a} is not a nontrivial upper element"
        )));
    }
    if a.max_abs() > Int::Small(bound as i64) {
        return Err(KiteError::Precondition(format!("{a} lies outside the {bound}-grid")));
    }
    let entries = a.dense_entries().expect("finite shape");
    let g = entries
        .iter()
        .map(|v| v.coords()[0].abs())
        .fold(Int::ZERO, |acc, v| acc.gcd(&v));
    let mut targets = Vec::new();
    for (side, len) in [(Side::Upper, n + 1), (Side::Lower, n)] {
        for k in 0..len {
            let mut e = vec![GroupVector::identity(1); len];
            e[k] = GroupVector::new([match side {
                Side::Upper => -&g,
                Side::Lower => g.clone(),
            }]);
            targets.push(shape.element(side, e)?);
        }
    }

    let limit = Int::Small(bound as i64);
    let mut members = vec![shape.zero(), shape.one(), a.clone()];
    let mut seen: BTreeSet<alloc::string::String> = members.iter().map(|x| x.to_string()).collect();
    members.dedup();
    let mut done = 0;
    let mut indeterminate = false;
    'grow: while done < members.len() {
        let x = members[done].clone();
        for k in 0..=done {
            let y = members[k].clone();
            for op in BinOp::ALL {
                for r in [shape.apply(op, &x, &y)?, shape.apply(op, &y, &x)?] {
                    if r.max_abs() > limit || !seen.insert(r.to_string()) {
                        continue;
                    }
                    if members.len() >= budget {
                        indeterminate = true;
                        break 'grow;
                    }
                    members.push(r);
                }
            }
        }
        done += 1;
    }
    let missing = targets.iter().filter(|t| !members.contains(t)).cloned().collect();
    Ok(Claim1Report {
        gcd: g,
        targets,
        missing,
        closure_size: members.len(),
        indeterminate,
    })
}

/// The normal-valuedness law a²b² ≤ ba on the `bound`-grid.
pub fn normal_valued_check(shape: &Shape, bound: u32, cap: u64) -> Result<CheckReport, KiteError> {
    let id = catalog_identity("nvalued")?;
    let mut r = check_identity(shape, &id, bound, cap)?;
    r.identity = "nvalued".into();
    Ok(r)
}

/// One row of the covers table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoversRow {
    pub n: usize,
    pub exponent: usize,
    pub eq3: CheckReport,
    /// The same check with exponent 2n-1, expected to fail.
    pub sharpness: CheckReport,
    pub separations: Vec<SeparationReport>,
}

pub fn covers_table(n_max: usize, bound: u32) -> Result<Vec<CoversRow>, KiteError> {
    (1..=n_max)
        .map(|n| {
            Ok(CoversRow {
                n,
                exponent: 2 * n + 1,
                eq3: check_eq3(n, bound, 2 * n + 1)?,
                sharpness: check_eq3(n, bound, 2 * n - 1)?,
                separations: (n + 1..=n_max)
                    .map(|m| separation_witness(n, m))
                    .collect::<Result<_, _>>()?,
            })
        })
        .collect()
}
