//! Injectivity certificate for (P_sym)₂₃ on V₁⊗ω: the 40×40 matrix, the 64×40
//! coefficient system, subsystem determinants, exceptional q and the
//! regenerated coefficient equations.

mod exceptional;
mod lemmas;
pub mod upoly;

pub use exceptional::{exceptional_q, root_sets_agree, ExceptionalRoot, ExceptionalSet};
pub use lemmas::{regenerate_lemmas, LemmaDiff, LemmaStatus};
pub use upoly::{isolate_roots, RootInterval, UPoly};

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calculus::{screening_point, triple_labels, BraidingOperator, CalculusError, EigenData};
use crate::connection::{codomain_labels, domain_labels, kernel_trivial};
use crate::field::{FieldElem, FieldError};
use crate::linalg::{det, inverse, rank, LinalgError, Mat};
use crate::SymMat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("codomain expansion does not close: {0}")]
    BasisChangeFailure(String),
    #[error("interpolated and symbolic determinants disagree at {0}")]
    InterpolationInconsistent(String),
    #[error("certification data: {0}")]
    Data(String),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Coordinates in span{ν₁…ν₁₀} of 16-vectors, through 10 rows on which the
/// ν-matrix is invertible.
pub struct NuCoordinates {
    nu: Vec<Vec<FieldElem>>,
    rows: Vec<usize>,
    inv: SymMat,
}

impl NuCoordinates {
    pub fn new(data: &EigenData) -> Result<Self, CertifyError> {
        let nu = data.nu.clone();
        let full = Mat::from_columns(16, &nu);
        let pt = screening_point();
        let num = full.eval_at(&pt)?;
        let mut rows: Vec<usize> = Vec::new();
        for i in 0..16 {
            let mut trial = rows.clone();
            trial.push(i);
            if rank(&num.submatrix(&trial, &(0..nu.len()).collect::<Vec<_>>())) == trial.len() {
                rows = trial;
            }
        }
        if rows.len() != nu.len() {
            return Err(CertifyError::BasisChangeFailure(format!("ν vectors span only {} dimensions", rows.len())));
        }
        let inv = inverse(&full.submatrix(&rows, &(0..nu.len()).collect::<Vec<_>>()))
            .map_err(|_| CertifyError::BasisChangeFailure("ν row selection is singular".into()))?;
        Ok(NuCoordinates { nu, rows, inv })
    }

    /// Coefficients c with Σ c_b ν_b = v, or None if v is not in the span.
    pub fn expand(&self, v: &[FieldElem]) -> Option<Vec<FieldElem>> {
        let sel: Vec<FieldElem> = self.rows.iter().map(|&i| v[i].clone()).collect();
        let c = self.inv.mul_vec(&sel).ok()?;
        let mut back = vec![FieldElem::zero(); 16];
        for (cb, nb) in c.iter().zip(&self.nu) {
            if cb.is_zero() {
                continue;
            }
            for (e, x) in back.iter_mut().zip(nb) {
                if !x.is_zero() {
                    *e = e.add_ref(&cb.mul_ref(x));
                }
            }
        }
        (back == v).then_some(c)
    }
}

/// ν_a⊗ω_j in the 64-dim basis, index a·4 + j.
fn nu_omega(data: &EigenData, col: usize) -> Vec<FieldElem> {
    let (a, j) = (col / 4, col % 4);
    let mut y = vec![FieldElem::zero(); 64];
    for (x, v) in data.nu[a].iter().enumerate() {
        if !v.is_zero() {
            y[x * 4 + j] = v.clone();
        }
    }
    y
}

/// The 64×40 embedding of ω_c⊗ν_b (column c·10 + b).
pub fn codomain_embedding(data: &EigenData) -> SymMat {
    let mut m = Mat::zeros(64, 40);
    for c in 0..4 {
        for (b, nb) in data.nu.iter().enumerate() {
            for (x, v) in nb.iter().enumerate() {
                if !v.is_zero() {
                    m.set(c * 16 + x, c * 10 + b, v.clone());
                }
            }
        }
    }
    m
}

/// Matrix of id⊗P_sym from {ν_a⊗ω_j} to {ω_c⊗ν_b}.
pub fn psym23_matrix(psym: &SymMat, data: &EigenData) -> Result<SymMat, CertifyError> {
    let coords = NuCoordinates::new(data)?;
    let p23: SymMat = Mat::identity(4).kron(psym);
    let labels = domain_labels();
    let mut cols = Vec::with_capacity(40);
    for (col, label) in labels.iter().enumerate() {
        let z = p23.mul_vec(&nu_omega(data, col))?;
        let mut out = Vec::with_capacity(40);
        for c in 0..4 {
            let part = coords.expand(&z[c * 16..c * 16 + 16]).ok_or_else(|| {
                CertifyError::BasisChangeFailure(format!("image of {} leaves span of ω{}⊗ν", label, c + 1))
            })?;
            out.extend(part);
        }
        cols.push(out);
    }
    Ok(Mat::from_columns(40, &cols).with_labels(codomain_labels(), labels))
}

/// The 64×40 coefficient system: column m·4 + n is
/// (id⊗(q²σ+1)(σ+q²))(ν_m⊗ω_n), row (i,j,k) is the coefficient of ω_i⊗ω_j⊗ω_k.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub m: SymMat,
}

pub fn unknown_label(col: usize) -> String {
    format!("A{}_{}", col / 4 + 1, col % 4 + 1)
}

pub fn unknown_labels() -> Vec<String> {
    (0..40).map(unknown_label).collect()
}

pub fn build_constraint_system(b: &BraidingOperator, data: &EigenData) -> ConstraintSystem {
    let q2 = FieldElem::q().pow(2).expect("q^2");
    let id: SymMat = Mat::identity(16);
    let left = b.sigma.scale(&q2).add(&id).expect("square");
    let right = b.sigma.add(&id.scale(&q2)).expect("square");
    let o = left.mul(&right).expect("16x16");
    let o23: SymMat = Mat::identity(4).kron(&o);
    let cols: Vec<Vec<FieldElem>> =
        (0..40).map(|col| o23.mul_vec(&nu_omega(data, col)).expect("64-vector")).collect();
    ConstraintSystem { m: Mat::from_columns(64, &cols).with_labels(triple_labels(), unknown_labels()) }
}

impl ConstraintSystem {
    /// M = (1+q²)²·E·psym23 entrywise.
    pub fn matches_psym23(&self, psym23: &SymMat, data: &EigenData) -> bool {
        let r = FieldElem::r();
        let rhs = codomain_embedding(data).mul(psym23).expect("64x40").scale(&r.mul_ref(&r));
        self.m.first_difference(&rhs).is_none()
    }

    pub fn row(&self, label: &str) -> Option<usize> {
        parse_triple(label)
    }

    pub fn column(&self, label: &str) -> Option<usize> {
        unknown_labels().iter().position(|l| l == label)
    }
}

/// "i,j,k" (1-based) to the row index.
pub fn parse_triple(label: &str) -> Option<usize> {
    let parts: Vec<usize> = label.split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?;
    match parts[..] {
        [i, j, k] if [i, j, k].iter().all(|x| (1..=4).contains(x)) => Some((i - 1) * 16 + (j - 1) * 4 + (k - 1)),
        _ => None,
    }
}

const SUBSYSTEMS: &str = include_str!("../../data/subsystems.json");

#[derive(Deserialize)]
struct SubsystemFile {
    format: String,
    version: u32,
    subsystems: Vec<SubsystemEntry>,
}

#[derive(Deserialize)]
struct SubsystemEntry {
    label: String,
    rows: Vec<String>,
    unknowns: Vec<String>,
    expected: Option<String>,
    mode: Mode,
}

/// How a subsystem determinant is compared with its reference value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Equal up to sign.
    Exact,
    /// Equal up to a rational times a monomial in t, k, s.
    Unit,
    /// Only nonvanishing is required.
    Nonzero,
}

/// One subsystem determinant with its comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct SubsystemDet {
    pub label: String,
    pub value: FieldElem,
    pub expected: Option<FieldElem>,
    pub mode: Mode,
    /// value / expected when that ratio is a unit.
    pub unit: Option<FieldElem>,
    pub pass: bool,
}

fn unit_ratio(value: &FieldElem, expected: &FieldElem) -> Option<FieldElem> {
    if value.is_zero() || expected.is_zero() {
        return None;
    }
    let ratio = value.div_ref(expected).ok()?;
    ratio.as_unit().map(|_| ratio)
}

pub fn subsystem_determinants(cs: &ConstraintSystem, data: &EigenData) -> Result<Vec<SubsystemDet>, CertifyError> {
    let f: SubsystemFile = serde_json::from_str(SUBSYSTEMS).map_err(|e| CertifyError::Data(e.to_string()))?;
    if f.format != "suq2-subsystems" || f.version != 1 {
        return Err(CertifyError::Data(format!("unsupported subsystem format {} v{}", f.format, f.version)));
    }
    f.subsystems
        .iter()
        .map(|e| {
            let rows: Vec<usize> = e
                .rows
                .iter()
                .map(|r| cs.row(r).ok_or_else(|| CertifyError::Data(format!("bad row '{}'", r))))
                .collect::<Result<_, _>>()?;
            let cols: Vec<usize> = e
                .unknowns
                .iter()
                .map(|u| cs.column(u).ok_or_else(|| CertifyError::Data(format!("bad unknown '{}'", u))))
                .collect::<Result<_, _>>()?;
            if rows.len() != cols.len() {
                return Err(CertifyError::Data(format!("subsystem {} is not square", e.label)));
            }
            let value = det(&cs.m.submatrix(&rows, &cols));
            let expected = e.expected.as_deref().map(|x| x.parse::<FieldElem>()).transpose()?;
            let expected = expected.map(|x| data.bind(&x)).transpose()?;
            let unit = expected.as_ref().and_then(|x| unit_ratio(&value, x));
            let pass = match (e.mode, &expected) {
                (Mode::Nonzero, _) => !value.is_zero(),
                (Mode::Exact, Some(x)) => !value.is_zero() && (value == *x || value == x.neg_ref()),
                (Mode::Unit, Some(_)) => unit.is_some(),
                (_, None) => false,
            };
            Ok(SubsystemDet { label: e.label.clone(), value, expected, mode: e.mode, unit, pass })
        })
        .collect()
}

/// Exact determinant of the 40×40 psym23 matrix.
pub fn psym23_det(psym23: &SymMat) -> FieldElem {
    det(psym23)
}

/// The determinants section of the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeterminantEntry {
    pub label: String,
    pub value: String,
    pub paper_value: Option<String>,
    pub unit_factor: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootEntry {
    pub poly_factor: String,
    pub interval_lo: String,
    pub interval_hi: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyEntry {
    pub name: String,
    pub pass: bool,
}

/// The machine-readable certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub variant: String,
    pub sign: String,
    pub determinants: Vec<DeterminantEntry>,
    pub exceptional_roots: Vec<RootEntry>,
    pub properties: Vec<PropertyEntry>,
}

impl Report {
    pub fn new(variant: &str, sign: &str) -> Self {
        Report {
            variant: variant.to_string(),
            sign: sign.to_string(),
            determinants: Vec::new(),
            exceptional_roots: Vec::new(),
            properties: Vec::new(),
        }
    }

    pub fn property(&mut self, name: impl Into<String>, pass: bool) {
        self.properties.push(PropertyEntry { name: name.into(), pass });
    }

    pub fn all_pass(&self) -> bool {
        self.properties.iter().all(|p| p.pass)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.properties.iter().filter(|p| !p.pass).map(|p| p.name.as_str()).collect()
    }
}

impl From<&SubsystemDet> for DeterminantEntry {
    fn from(d: &SubsystemDet) -> Self {
        DeterminantEntry {
            label: d.label.clone(),
            value: d.value.to_string(),
            paper_value: d.expected.as_ref().map(|x| x.to_string()),
            unit_factor: match d.mode {
                Mode::Exact if d.pass => Some(if d.expected.as_ref() == Some(&d.value) { "1" } else { "-1" }.to_string()),
                _ => d.unit.as_ref().map(|u| u.to_string()),
            },
        }
    }
}

impl From<&ExceptionalRoot> for RootEntry {
    fn from(r: &ExceptionalRoot) -> Self {
        RootEntry {
            poly_factor: r.factor.to_string(),
            interval_lo: r.interval.lo.to_string(),
            interval_hi: r.interval.hi.to_string(),
        }
    }
}

/// Everything certify computes, before it is rendered.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub psym23: SymMat,
    pub psym23_det: FieldElem,
    pub system: ConstraintSystem,
    pub identity_holds: bool,
    pub psym23_injective: bool,
    pub system_kernel_trivial: bool,
    pub subsystems: Vec<SubsystemDet>,
    pub exceptional: Vec<ExceptionalSet>,
}

/// Build the full certificate, with exceptional-q sets at each (t₀, k₀).
pub fn certify(
    b: &BraidingOperator,
    psym: &SymMat,
    data: &EigenData,
    points: &[(num_rational::BigRational, num_rational::BigRational)],
) -> Result<Certificate, CertifyError> {
    let psym23 = psym23_matrix(psym, data)?;
    let d = psym23_det(&psym23);
    let system = build_constraint_system(b, data);
    let identity_holds = system.matches_psym23(&psym23, data);
    let psym23_injective = !d.is_zero();
    let system_kernel_trivial = kernel_trivial(&system.m);
    let subsystems = subsystem_determinants(&system, data)?;
    let exceptional = points
        .iter()
        .map(|(t0, k0)| exceptional_q(&psym23, t0, k0, Some(&d)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Certificate { psym23, psym23_det: d, system, identity_holds, psym23_injective, system_kernel_trivial, subsystems, exceptional })
}

impl Certificate {
    pub fn fill_report(&self, report: &mut Report) {
        report.determinants.push(DeterminantEntry {
            label: "psym23".into(),
            value: self.psym23_det.to_string(),
            paper_value: None,
            unit_factor: None,
        });
        report.determinants.extend(self.subsystems.iter().map(DeterminantEntry::from));
        if let Some(first) = self.exceptional.first() {
            report.exceptional_roots.extend(first.roots.iter().map(RootEntry::from));
        }
        report.property("psym23 expansion closes in the ω⊗ν basis", true);
        report.property("psym23 determinant is nonzero", self.psym23_injective);
        report.property("constraint system equals (1+q^2)^2 psym23", self.identity_holds);
        report.property("constraint system kernel is trivial", self.system_kernel_trivial);
        for s in &self.subsystems {
            let how = match s.mode {
                Mode::Exact => "matches up to sign",
                Mode::Unit => "matches up to a unit",
                Mode::Nonzero => "is nonzero",
            };
            report.property(format!("subsystem {} determinant {}", s.label, how), s.pass);
        }
        for e in &self.exceptional {
            report.property(
                format!("interpolated determinant agrees with symbolic at (t,k)=({},{})", e.t0, e.k0),
                e.control_ok,
            );
            report.property(
                format!("root intervals isolate one sign change at (t,k)=({},{})", e.t0, e.k0),
                e.intervals_certified(),
            );
            report.property(
                format!("octic q^8+q^6+q^4-1 root in (0.82,0.83) found at (t,k)=({},{})", e.t0, e.k0),
                e.has_octic_root(),
            );
        }
        if self.exceptional.len() > 1 {
            report.property("exceptional root set independent of (t,k)", root_sets_agree(&self.exceptional));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{build_psym, select_variant};

    #[test]
    fn triple_parsing() {
        assert_eq!(parse_triple("1,1,1"), Some(0));
        assert_eq!(parse_triple("4,4,4"), Some(63));
        assert_eq!(parse_triple("1,2,3"), Some(6));
        assert_eq!(parse_triple("0,1,1"), None);
        assert_eq!(parse_triple("1,2"), None);
    }

    #[test]
    fn corner_rows_are_single_unknowns() {
        let sel = select_variant(None).unwrap();
        let cs = build_constraint_system(&sel.braiding, &sel.data);
        for (row, unknown) in [("1,1,1", "A1_1"), ("4,4,4", "A4_4")] {
            let r = cs.row(row).unwrap();
            let nonzero: Vec<usize> = (0..40).filter(|&c| !cs.m.get(r, c).is_zero()).collect();
            assert_eq!(nonzero, vec![cs.column(unknown).unwrap()]);
        }
        let psym = build_psym(&sel.braiding);
        let p23 = psym23_matrix(&psym, &sel.data).unwrap();
        assert!(cs.matches_psym23(&p23, &sel.data));
    }
}
