//! Machine-readable reports. Field order is fixed so output is byte-stable.

use std::collections::BTreeMap;

use kites::approx::SimWitness;
use kites::covers::CoversRow;
use kites::structure::{ClassificationResult, Decomposition};
use kites::CheckReport;
use serde::Serialize;

#[derive(Serialize)]
pub struct CheckJson {
    pub identity: String,
    pub holds: bool,
    pub counterexample: Option<BTreeMap<String, String>>,
    pub evaluations: u128,
}

impl From<&CheckReport> for CheckJson {
    fn from(r: &CheckReport) -> Self {
        CheckJson {
            identity: r.identity.clone(),
            holds: r.holds,
            counterexample: r
                .counterexample
                .as_ref()
                .map(|c| c.iter().map(|(v, x)| (v.clone(), x.to_string())).collect()),
            evaluations: r.evaluations,
        }
    }
}

#[derive(Serialize)]
pub struct Witness {
    pub sigma: Vec<usize>,
    pub tau: Vec<usize>,
}

#[derive(Serialize)]
pub struct ClassifyJson {
    pub shape: String,
    pub tag: String,
    pub si: bool,
    pub witness: Option<Witness>,
    pub reason: String,
}

impl ClassifyJson {
    pub fn new(shape: &str, c: &ClassificationResult) -> Self {
        ClassifyJson {
            shape: shape.to_string(),
            tag: c.tag.to_string(),
            si: c.si,
            witness: c.witness.as_ref().map(|(s, t)| Witness {
                sigma: s.clone(),
                tau: t.clone(),
            }),
            reason: c.reason.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct FactorJson {
    pub i_indices: Vec<usize>,
    pub j_indices: Vec<usize>,
    pub shape: String,
    pub tag: String,
}

#[derive(Serialize)]
pub struct DecomposeJson {
    pub shape: String,
    pub bound: u32,
    pub grid_size: usize,
    pub factors: Vec<FactorJson>,
    pub injective: bool,
    pub preserves_operations: bool,
    pub violation: Option<[String; 3]>,
}

impl DecomposeJson {
    pub fn new(shape: &str, d: &Decomposition) -> Self {
        DecomposeJson {
            shape: shape.to_string(),
            bound: d.bound,
            grid_size: d.grid_size,
            factors: d
                .factors
                .iter()
                .map(|f| FactorJson {
                    i_indices: f.i_indices.clone(),
                    j_indices: f.j_indices.clone(),
                    shape: f.shape.to_string(),
                    tag: f.classification.tag.to_string(),
                })
                .collect(),
            injective: d.injective,
            preserves_operations: d.preserves_operations(),
            violation: d
                .violation
                .as_ref()
                .map(|(op, x, y)| [op.clone(), x.to_string(), y.to_string()]),
        }
    }
}

#[derive(Serialize)]
pub struct ApproxJson {
    pub op: String,
    pub k: Option<usize>,
    #[serde(rename = "N")]
    pub n: usize,
    pub verified: bool,
    pub diff_sets: Vec<Vec<i64>>,
}

impl ApproxJson {
    pub fn from_sim(op: &str, w: &SimWitness) -> Self {
        ApproxJson {
            op: op.to_string(),
            k: w.k,
            n: w.verified_to,
            verified: w.k.is_some_and(|k| k <= 1),
            diff_sets: w.diff_sets.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct SeparationJson {
    pub m: usize,
    pub witness: String,
    pub value: String,
    pub separates: bool,
}

#[derive(Serialize)]
pub struct CoversJson {
    pub n: usize,
    pub exponent: usize,
    pub holds: bool,
    pub sharp: bool,
    pub separations: Vec<SeparationJson>,
}

impl From<&CoversRow> for CoversJson {
    fn from(r: &CoversRow) -> Self {
        CoversJson {
            n: r.n,
            exponent: r.exponent,
            holds: r.eq3.holds,
            sharp: !r.sharpness.holds,
            separations: r
                .separations
                .iter()
                .map(|s| SeparationJson {
                    m: s.m,
                    witness: s.witness.to_string(),
                    value: s.value.to_string(),
                    separates: s.separates(),
                })
                .collect(),
        }
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("report types always serialize")
}
