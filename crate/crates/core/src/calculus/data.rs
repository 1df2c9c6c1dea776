//! Loading the eigenvector tables shipped with the crate.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{pair, CalculusError};
use crate::field::FieldElem;

const TABLES: &str = include_str!("../../data/eigen_tables.json");

/// Which reading of the third eigenspace table to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Paper,
    Corrected,
    Symmetric,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Paper, Variant::Corrected, Variant::Symmetric];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Paper => "paper",
            Variant::Corrected => "corrected",
            Variant::Symmetric => "symmetric",
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown variant '{}', expected paper, corrected or symmetric", s))
    }
}

pub(crate) type SparseVec = BTreeMap<String, String>;

#[derive(Deserialize)]
struct TableFile {
    format: String,
    version: u32,
    eigenvalues: BTreeMap<String, String>,
    nu: Vec<SparseVec>,
    ev1: Vec<SparseVec>,
    ev2: Vec<SparseVec>,
    variant_order: Vec<Variant>,
    variants: BTreeMap<Variant, VariantEntry>,
}

#[derive(Deserialize)]
struct VariantEntry {
    t: Option<String>,
    ev3: Vec<SparseVec>,
}

/// Eigen-table data for one variant, with any binding of t already applied.
#[derive(Clone, Debug)]
pub struct EigenData {
    pub variant: Variant,
    /// Value substituted for t, if the variant fixes it.
    pub t_binding: Option<FieldElem>,
    pub nu: Vec<Vec<FieldElem>>,
    pub ev1: Vec<Vec<FieldElem>>,
    pub ev2: Vec<Vec<FieldElem>>,
    pub ev3: Vec<Vec<FieldElem>>,
    pub eigenvalues: [FieldElem; 3],
}

fn parse(s: &str) -> Result<FieldElem, CalculusError> {
    s.parse::<FieldElem>().map_err(CalculusError::from)
}

pub(crate) fn parse_key(key: &str) -> Result<usize, CalculusError> {
    let bad = || CalculusError::Data(format!("bad basis key '{}'", key));
    let (i, j) = key.split_once(',').ok_or_else(bad)?;
    let i: usize = i.trim().parse().map_err(|_| bad())?;
    let j: usize = j.trim().parse().map_err(|_| bad())?;
    if !(1..=4).contains(&i) || !(1..=4).contains(&j) {
        return Err(bad());
    }
    Ok(pair(i, j))
}

/// Dense 16-vector from a map "i,j" → expression.
pub(crate) fn sparse_to_dense(v: &SparseVec) -> Result<Vec<FieldElem>, CalculusError> {
    let mut out = vec![FieldElem::zero(); 16];
    for (key, expr) in v {
        out[parse_key(key)?] = parse(expr)?;
    }
    Ok(out)
}

/// Substitute t ↦ `t` throughout.
pub(crate) fn bind_t(x: &FieldElem, t: &Option<FieldElem>) -> Result<FieldElem, CalculusError> {
    match t {
        None => Ok(x.clone()),
        Some(tv) => Ok(x.substitute(&[FieldElem::q(), tv.clone(), FieldElem::k()])?),
    }
}

fn load_list(list: &[SparseVec], t: &Option<FieldElem>) -> Result<Vec<Vec<FieldElem>>, CalculusError> {
    list.iter()
        .map(|v| sparse_to_dense(v)?.iter().map(|x| bind_t(x, t)).collect())
        .collect()
}

fn tables() -> Result<TableFile, CalculusError> {
    let f: TableFile = serde_json::from_str(TABLES).map_err(|e| CalculusError::Data(e.to_string()))?;
    if f.format != "suq2-eigen-tables" || f.version != 1 {
        return Err(CalculusError::Data(format!("unsupported table format {} v{}", f.format, f.version)));
    }
    Ok(f)
}

/// Variants in the order automatic selection tries them.
pub fn variant_order() -> Result<Vec<Variant>, CalculusError> {
    Ok(tables()?.variant_order)
}

impl EigenData {
    /// Apply this variant's binding of t to an arbitrary element.
    pub fn bind(&self, x: &FieldElem) -> Result<FieldElem, CalculusError> {
        bind_t(x, &self.t_binding)
    }

    pub fn load(variant: Variant) -> Result<Self, CalculusError> {
        let f = tables()?;
        let entry = f
            .variants
            .get(&variant)
            .ok_or_else(|| CalculusError::Data(format!("variant {} missing", variant)))?;
        let t_binding = entry.t.as_deref().map(parse).transpose()?;
        let counts = [(f.nu.len(), 10, "nu"), (f.ev1.len(), 10, "ev1"), (f.ev2.len(), 3, "ev2"), (entry.ev3.len(), 3, "ev3")];
        for (got, want, name) in counts {
            if got != want {
                return Err(CalculusError::Data(format!("{} has {} vectors, expected {}", name, got, want)));
            }
        }
        let ev = |key: &str| -> Result<FieldElem, CalculusError> {
            let s = f.eigenvalues.get(key).ok_or_else(|| CalculusError::Data(format!("eigenvalue {} missing", key)))?;
            parse(s)
        };
        Ok(EigenData {
            variant,
            nu: load_list(&f.nu, &t_binding)?,
            ev1: load_list(&f.ev1, &t_binding)?,
            ev2: load_list(&f.ev2, &t_binding)?,
            ev3: load_list(&entry.ev3, &t_binding)?,
            eigenvalues: [ev("ev1")?, ev("ev2")?, ev("ev3")?],
            t_binding,
        })
    }
}
