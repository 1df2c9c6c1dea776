//! The 4D± calculus data: invariant basis, eigen-tables, braiding, symmetrizer,
//! wedge model and exterior derivative.

mod data;
mod index;
mod reference;

pub use data::{variant_order, EigenData, Variant};
pub use reference::{check_decompositions, diff_vectors, nabla0_displays, DecompositionCheck, EntryDiff};
pub use index::{pair, pair_label, pair_labels, triple, triple_label, triple_labels, wedge_labels};

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::field::{FieldElem, FieldError, Point};
use crate::linalg::{det, inverse, kernel, LinalgError, Mat, Ring};
use crate::SymMat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("eigen-table data: {0}")]
    Data(String),
    #[error("eigenvectors are linearly dependent; first dependent vector: {vector}")]
    DependentEigenvectors { vector: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plus" | "+" => Ok(Sign::Plus),
            "minus" | "-" => Ok(Sign::Minus),
            other => Err(format!("unknown sign '{}', expected plus or minus", other)),
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

/// The operator σ on the 16-dimensional space of invariant two-tensors,
/// with the eigenbasis it was built from.
#[derive(Clone, Debug)]
pub struct BraidingOperator {
    pub sigma: SymMat,
    /// Columns: the 16 table eigenvectors (10, then 3, then 3).
    pub basis: SymMat,
    pub basis_inv: SymMat,
    /// Projectors onto the eigenvalue 1, −q², −q⁻² spaces.
    pub projectors: [SymMat; 3],
    pub eigenvalues: [FieldElem; 3],
}

const BLOCKS: [std::ops::Range<usize>; 3] = [0..10, 10..13, 13..16];

fn vector_name(col: usize) -> String {
    match col {
        0..=9 => format!("ev1[{}]", col + 1),
        10..=12 => format!("ev2[{}]", col - 9),
        _ => format!("ev3[{}]", col - 12),
    }
}

pub fn build_sigma(data: &EigenData) -> Result<BraidingOperator, CalculusError> {
    let cols: Vec<Vec<FieldElem>> = data.ev1.iter().chain(&data.ev2).chain(&data.ev3).cloned().collect();
    let b = Mat::from_columns(16, &cols);
    let b_inv = match inverse(&b) {
        Ok(m) => m,
        Err(LinalgError::SingularMatrix { column }) => {
            return Err(CalculusError::DependentEigenvectors { vector: vector_name(column) })
        }
        Err(e) => return Err(e.into()),
    };
    let lam = data.eigenvalues.clone();
    let mut diag = Vec::with_capacity(16);
    for (a, range) in BLOCKS.iter().enumerate() {
        diag.extend(range.clone().map(|_| lam[a].clone()));
    }
    let sigma = b.mul(&Mat::diag(&diag))?.mul(&b_inv)?;
    let projectors = [0, 1, 2].map(|a| {
        let e: Vec<FieldElem> = (0..16)
            .map(|i| if BLOCKS[a].contains(&i) { FieldElem::one() } else { FieldElem::zero() })
            .collect();
        b.mul(&Mat::diag(&e)).and_then(|m| m.mul(&b_inv)).expect("square 16x16")
    });
    let labels = pair_labels();
    Ok(BraidingOperator {
        sigma: sigma.with_labels(labels.clone(), labels),
        basis: b,
        basis_inv: b_inv,
        projectors,
        eigenvalues: lam,
    })
}

fn shifted(m: &SymMat, lam: &FieldElem) -> SymMat {
    m.sub(&Mat::identity(m.rows()).scale(lam)).expect("square")
}

/// Outcome of the minimal-polynomial and eigenspace checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinPolyReport {
    pub annihilates: bool,
    /// Whether each product of two of the three factors annihilates σ
    /// (dropping the factor for eigenvalue 1, −q², −q⁻² respectively).
    pub proper_factor_annihilates: [bool; 3],
    pub eigenspace_dims: [usize; 3],
}

impl MinPolyReport {
    pub fn passes(&self) -> bool {
        self.annihilates && self.proper_factor_annihilates.iter().all(|x| !x) && self.eigenspace_dims == [10, 3, 3]
    }
}

pub fn min_poly_check(b: &BraidingOperator) -> MinPolyReport {
    let f: Vec<SymMat> = b.eigenvalues.iter().map(|l| shifted(&b.sigma, l)).collect();
    let prod = |x: &SymMat, y: &SymMat| x.mul(y).expect("square");
    let full = prod(&prod(&f[0], &f[1]), &f[2]);
    let proper = [prod(&f[1], &f[2]).is_zero(), prod(&f[0], &f[2]).is_zero(), prod(&f[0], &f[1]).is_zero()];
    let dims = [0, 1, 2].map(|a| kernel(&f[a]).len());
    MinPolyReport { annihilates: full.is_zero(), proper_factor_annihilates: proper, eigenspace_dims: dims }
}

/// P_sym = (σ + q²)(σ + q⁻²) / ((1 + q²)(1 + q⁻²)).
pub fn build_psym(b: &BraidingOperator) -> SymMat {
    let q2 = FieldElem::q().pow(2).expect("q^2");
    let qm2 = FieldElem::q().pow(-2).expect("q nonzero");
    let n = b.sigma.rows();
    let id: SymMat = Mat::identity(n);
    let x = b.sigma.add(&id.scale(&q2)).expect("square");
    let y = b.sigma.add(&id.scale(&qm2)).expect("square");
    let c = FieldElem::one()
        .add_ref(&q2)
        .mul_ref(&FieldElem::one().add_ref(&qm2))
        .invert()
        .expect("nonzero");
    let labels = pair_labels();
    x.mul(&y).expect("square").scale(&c).with_labels(labels.clone(), labels)
}

/// A basis triple (1-based) on which the braid relation fails.
pub type Witness = (usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidOutcome {
    pub pass: bool,
    /// First basis triple (1-based) whose column differs.
    pub witness: Option<Witness>,
}

/// Compare (id⊗σ)(σ⊗id)(id⊗σ) with (σ⊗id)(id⊗σ)(σ⊗id) on the 64-dim space.
pub fn braid_check<T: Ring>(sigma: &Mat<T>) -> BraidOutcome {
    let id4: Mat<T> = Mat::identity(4);
    let s12 = sigma.kron(&id4);
    let s23 = id4.kron(sigma);
    let lhs = s23.mul(&s12).and_then(|m| m.mul(&s23)).expect("64x64");
    let rhs = s12.mul(&s23).and_then(|m| m.mul(&s12)).expect("64x64");
    match lhs.first_difference(&rhs) {
        None => BraidOutcome { pass: true, witness: None },
        Some((_, col)) => BraidOutcome { pass: false, witness: Some((col / 16 + 1, (col / 4) % 4 + 1, col % 4 + 1)) },
    }
}

/// A generic Pythagorean point used for fast numeric screening.
pub fn screening_point() -> Point {
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    Point::from_u(&r(3, 1), r(2, 1), r(3, 1))
}

/// The variant actually used, with its data and σ.
#[derive(Clone, Debug)]
pub struct Selection {
    pub data: EigenData,
    pub braiding: BraidingOperator,
    /// Variants tried before this one and rejected by the braid screen.
    pub rejected: Vec<(Variant, Option<Witness>)>,
}

/// Load and build `variant`, or with `None` pick the first variant in table
/// order whose σ satisfies the braid relation at a screening point.
pub fn select_variant(variant: Option<Variant>) -> Result<Selection, CalculusError> {
    if let Some(v) = variant {
        let data = EigenData::load(v)?;
        let braiding = build_sigma(&data)?;
        return Ok(Selection { data, braiding, rejected: Vec::new() });
    }
    let order = variant_order()?;
    let mut rejected = Vec::new();
    let pt = screening_point();
    for v in &order {
        let data = EigenData::load(*v)?;
        let braiding = build_sigma(&data)?;
        let numeric = braiding.sigma.eval_at(&pt)?;
        let outcome = braid_check(&numeric);
        if outcome.pass {
            return Ok(Selection { data, braiding, rejected });
        }
        rejected.push((*v, outcome.witness));
    }
    let last = *order.last().ok_or_else(|| CalculusError::Data("empty variant order".into()))?;
    let data = EigenData::load(last)?;
    let braiding = build_sigma(&data)?;
    Ok(Selection { data, braiding, rejected })
}

/// Exact braid check of a symbolic σ. A mismatch at the screening point is
/// already a proof of failure, so the symbolic products are only formed when
/// the numeric check passes.
pub fn braid_check_exact(sigma: &SymMat) -> BraidOutcome {
    if let Ok(numeric) = sigma.eval_at(&screening_point()) {
        let out = braid_check(&numeric);
        if !out.pass {
            return out;
        }
    }
    braid_check(sigma)
}

/// Coordinates of (I − P_sym)x in the basis of the six F-part eigenvectors.
pub fn wedge_rep(b: &BraidingOperator, x: &[FieldElem]) -> Vec<FieldElem> {
    let coords = b.basis_inv.mul_vec(x).expect("16-vector");
    coords[10..16].to_vec()
}

/// The 16-vector represented by a wedge-model vector.
pub fn wedge_embed(b: &BraidingOperator, v: &[FieldElem]) -> Vec<FieldElem> {
    let mut full = vec![FieldElem::zero(); 16];
    full[10..16].clone_from_slice(v);
    b.basis.mul_vec(&full).expect("16-vector")
}

/// d(ω_i) in the wedge model, i = 1..4.
#[derive(Clone, Debug)]
pub struct ExteriorDerivative {
    pub sign: Sign,
    pub images: Vec<Vec<FieldElem>>,
}

fn unit16(i: usize, j: usize) -> Vec<FieldElem> {
    let mut v = vec![FieldElem::zero(); 16];
    v[pair(i, j)] = FieldElem::one();
    v
}

/// The two-tensor whose wedge is d(ω_i): d(ω_i) = ∧(lift).
pub fn d_lift(sign: Sign, i: usize) -> Vec<FieldElem> {
    let s = FieldElem::s().scale_int(sign.factor());
    let q = FieldElem::q();
    let (coef, v) = match i {
        1 => (s, unit16(1, 3)),
        2 => (s.neg_ref().div_ref(&q.mul_ref(&q)).expect("q nonzero"), unit16(2, 3)),
        3 => (s.div_ref(&q).expect("q nonzero"), unit16(1, 2)),
        _ => (FieldElem::zero(), vec![FieldElem::zero(); 16]),
    };
    v.iter().map(|x| x.mul_ref(&coef)).collect()
}

pub fn d_basis(sign: Sign, b: &BraidingOperator) -> ExteriorDerivative {
    let images = (1..=4).map(|i| wedge_rep(b, &d_lift(sign, i))).collect();
    ExteriorDerivative { sign, images }
}

/// ν₁…ν₁₀ and the ten eigenvalue-1 vectors span the same 10-dim space.
pub fn nu_span_matches(data: &EigenData) -> bool {
    let nu = Mat::from_columns(16, &data.nu);
    let both: Vec<Vec<FieldElem>> = data.nu.iter().chain(&data.ev1).cloned().collect();
    let joint = Mat::from_columns(16, &both);
    kernel(&nu).is_empty() && 20 - kernel(&joint).len() == 10
}

/// det of the eigenvector matrix, for the independence invariant.
pub fn eigenbasis_det(b: &BraidingOperator) -> FieldElem {
    det(&b.basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_braids() {
        let id: SymMat = Mat::identity(16);
        assert!(braid_check(&id).pass);
    }

    #[test]
    fn sigma_fixes_w1w1_and_psym_fixes_nu() {
        let data = EigenData::load(Variant::Symmetric).unwrap();
        let b = build_sigma(&data).unwrap();
        let e11 = unit16(1, 1);
        assert_eq!(b.sigma.mul_vec(&e11).unwrap(), e11);
        let p = build_psym(&b);
        for nu in &data.nu {
            assert_eq!(&p.mul_vec(nu).unwrap(), nu);
        }
    }

    #[test]
    fn automatic_selection_skips_non_braiding_variants() {
        let sel = select_variant(None).unwrap();
        assert_eq!(sel.data.variant, Variant::Symmetric);
        assert_eq!(sel.rejected.len(), 2);
    }

    #[test]
    fn d_of_w4_vanishes() {
        assert!(d_lift(Sign::Plus, 4).iter().all(|x| x.is_zero()));
    }
}
