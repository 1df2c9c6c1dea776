//! Closed-form reference identities: three decompositions into eigenvectors
//! and the four ∇₀ displays.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::data::{bind_t, parse_key, sparse_to_dense, SparseVec};
use super::{pair_label, BraidingOperator, CalculusError, Sign};
use crate::field::FieldElem;

const FORMS: &str = include_str!("../../data/reference_forms.json");

#[derive(Deserialize)]
struct FormsFile {
    format: String,
    version: u32,
    decompositions: Vec<DecompEntry>,
    nabla0: Vec<DisplayEntry>,
}

#[derive(Deserialize)]
struct DecompEntry {
    lhs: String,
    parts: Vec<PartEntry>,
}

#[derive(Deserialize)]
struct PartEntry {
    space: String,
    coef: String,
    vec: SparseVec,
}

#[derive(Deserialize)]
struct DisplayEntry {
    index: usize,
    coef: String,
    vec: SparseVec,
}

fn forms() -> Result<FormsFile, CalculusError> {
    let f: FormsFile = serde_json::from_str(FORMS).map_err(|e| CalculusError::Data(e.to_string()))?;
    if f.format != "suq2-reference-forms" || f.version != 1 {
        return Err(CalculusError::Data(format!("unsupported reference format {} v{}", f.format, f.version)));
    }
    Ok(f)
}

/// One coordinate where two 16-vectors disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryDiff {
    pub basis: String,
    pub expected: String,
    pub actual: String,
}

pub fn diff_vectors(expected: &[FieldElem], actual: &[FieldElem]) -> Vec<EntryDiff> {
    expected
        .iter()
        .zip(actual)
        .enumerate()
        .filter(|(_, (e, a))| e != a)
        .map(|(i, (e, a))| EntryDiff { basis: pair_label(i), expected: e.to_string(), actual: a.to_string() })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionCheck {
    pub lhs: String,
    /// Differences between the left-hand side and the sum of the parts.
    pub sum_diff: Vec<EntryDiff>,
    /// Parts that are not eigenvectors for their declared eigenvalue.
    pub misplaced_parts: Vec<usize>,
}

impl DecompositionCheck {
    pub fn passes(&self) -> bool {
        self.sum_diff.is_empty() && self.misplaced_parts.is_empty()
    }
}

fn scaled(coef: &str, vec: &SparseVec, t: &Option<FieldElem>) -> Result<Vec<FieldElem>, CalculusError> {
    let c = bind_t(&coef.parse::<FieldElem>()?, t)?;
    sparse_to_dense(vec)?.iter().map(|x| bind_t(&x.mul_ref(&c), t)).collect()
}

fn unit(key: &str) -> Result<Vec<FieldElem>, CalculusError> {
    let mut m = BTreeMap::new();
    m.insert(key.to_string(), "1".to_string());
    sparse_to_dense(&m)
}

/// Check each reference decomposition against σ.
pub fn check_decompositions(
    b: &BraidingOperator,
    t: &Option<FieldElem>,
) -> Result<Vec<DecompositionCheck>, CalculusError> {
    let f = forms()?;
    let mut out = Vec::new();
    for d in &f.decompositions {
        let lhs = unit(&d.lhs)?;
        let mut sum = vec![FieldElem::zero(); 16];
        let mut misplaced = Vec::new();
        for (n, part) in d.parts.iter().enumerate() {
            let v = scaled(&part.coef, &part.vec, t)?;
            let lam = match part.space.as_str() {
                "ev1" => &b.eigenvalues[0],
                "ev2" => &b.eigenvalues[1],
                "ev3" => &b.eigenvalues[2],
                other => return Err(CalculusError::Data(format!("unknown eigenspace '{}'", other))),
            };
            let image = b.sigma.mul_vec(&v)?;
            if image.iter().zip(&v).any(|(x, y)| *x != y.mul_ref(lam)) {
                misplaced.push(n + 1);
            }
            sum = sum.iter().zip(&v).map(|(x, y)| x.add_ref(y)).collect();
        }
        out.push(DecompositionCheck {
            lhs: pair_label(parse_key(&d.lhs)?),
            sum_diff: diff_vectors(&lhs, &sum),
            misplaced_parts: misplaced,
        });
    }
    Ok(out)
}

/// The four ∇₀(ω_i) closed forms as 16-vectors.
pub fn nabla0_displays(sign: Sign, t: &Option<FieldElem>) -> Result<Vec<Vec<FieldElem>>, CalculusError> {
    let f = forms()?;
    let mut out = vec![vec![FieldElem::zero(); 16]; 4];
    for e in &f.nabla0 {
        if !(1..=4).contains(&e.index) {
            return Err(CalculusError::Data(format!("display index {} out of range", e.index)));
        }
        out[e.index - 1] = scaled(&e.coef, &e.vec, t)?.iter().map(|x| x.scale_int(sign.factor())).collect();
    }
    Ok(out)
}
