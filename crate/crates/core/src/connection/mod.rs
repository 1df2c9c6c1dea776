//! The torsionless connection ∇₀, metrics, the compatibility functional Π⁰_g,
//! the map Φ_g and the Levi-Civita solve.

mod metric;

pub use metric::{example_metric, metric_basis, Metric};

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::calculus::{
    d_basis, pair_labels, screening_point, wedge_embed, wedge_labels, wedge_rep, BraidingOperator,
    CalculusError, EigenData, Sign,
};
use crate::field::{FieldElem, FieldError};
use crate::linalg::{kernel, rank, solve, LinalgError, Mat};
use crate::SymMat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectionError {
    #[error("metric is degenerate (det G = 0)")]
    SingularMetric,
    #[error("metric is not sigma-invariant at entry {0}")]
    NotInvariant(String),
    #[error("metric must be a 4x4 grid: {0}")]
    MetricShape(String),
    #[error("compatibility operator is singular (column {column})")]
    PhiSingular { column: usize },
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn omega_labels() -> Vec<String> {
    (1..=4).map(|i| format!("w{}", i)).collect()
}

/// ∇ on the invariant basis: column j holds ∇(ω_{j+1}) in pair coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    pub nabla: SymMat,
}

impl Connection {
    pub fn from_columns(cols: &[Vec<FieldElem>]) -> Self {
        Connection { nabla: Mat::from_columns(16, cols).with_labels(pair_labels(), omega_labels()) }
    }

    pub fn zero() -> Self {
        Self::from_columns(&vec![vec![FieldElem::zero(); 16]; 4])
    }

    pub fn column(&self, j: usize) -> Vec<FieldElem> {
        self.nabla.column(j)
    }
}

/// ∇₀(ω_i) = −(∧|F)⁻¹ d(ω_i).
pub fn build_nabla0(sign: Sign, b: &BraidingOperator) -> Connection {
    let d = d_basis(sign, b);
    let cols: Vec<Vec<FieldElem>> =
        d.images.iter().map(|img| wedge_embed(b, img).iter().map(FieldElem::neg_ref).collect()).collect();
    Connection::from_columns(&cols)
}

/// T_∇(ω_i) = ∧∇(ω_i) + d(ω_i) in the wedge model (6×4).
pub fn torsion(c: &Connection, sign: Sign, b: &BraidingOperator) -> SymMat {
    let d = d_basis(sign, b);
    let cols: Vec<Vec<FieldElem>> = (0..4)
        .map(|i| {
            let w = wedge_rep(b, &c.column(i));
            w.iter().zip(&d.images[i]).map(|(x, y)| x.add_ref(y)).collect()
        })
        .collect();
    Mat::from_columns(6, &cols).with_labels(wedge_labels(), omega_labels())
}

/// The fixed pieces of the compatibility functional for one metric:
/// Π⁰_g(∇) = A·(∇⊗id)·P_sym with A = 2·(id⊗g)(σ⊗id).
pub struct Compat<'a> {
    braiding: &'a BraidingOperator,
    psym: &'a SymMat,
    nu: &'a [Vec<FieldElem>],
    a: SymMat,
}

impl<'a> Compat<'a> {
    pub fn new(b: &'a BraidingOperator, psym: &'a SymMat, data: &'a EigenData, g: &Metric) -> Self {
        let two = FieldElem::from_i64(2);
        let contract = Mat::from_fn(4, 64, |c, x| {
            if x / 16 == c {
                g.g.get((x / 4) % 4, x % 4).mul_ref(&two)
            } else {
                FieldElem::zero()
            }
        });
        let s12 = b.sigma.kron(&Mat::identity(4));
        let a = contract.mul(&s12).expect("4x64 by 64x64");
        Compat { braiding: b, psym, nu: &data.nu, a }
    }

    /// (∇⊗id) as a 64×16 matrix.
    fn lift(c: &Connection) -> SymMat {
        let mut m = Mat::zeros(64, 16);
        for a in 0..4 {
            let col = c.column(a);
            for bb in 0..4 {
                for (z, v) in col.iter().enumerate() {
                    if !v.is_zero() {
                        m.set(z * 4 + bb, a * 4 + bb, v.clone());
                    }
                }
            }
        }
        m
    }

    /// Π⁰_g(∇) as a 4×16 matrix.
    pub fn pi0(&self, c: &Connection) -> SymMat {
        let m = self.a.mul(&Self::lift(c)).and_then(|x| x.mul(self.psym)).expect("conformable");
        m.with_labels(omega_labels(), pair_labels())
    }

    /// Π⁰_g(∇) on ν₁…ν₁₀, flattened with index c·10 + b.
    fn pi0_on_nu(&self, c: &Connection) -> Vec<FieldElem> {
        let m = self.a.mul(&Self::lift(c)).expect("conformable");
        let mut out = Vec::with_capacity(40);
        for ci in 0..4 {
            for nb in self.nu {
                let mut acc = FieldElem::zero();
                for (x, v) in nb.iter().enumerate() {
                    if !v.is_zero() {
                        acc = acc.add_ref(&m.get(ci, x).mul_ref(v));
                    }
                }
                out.push(acc);
            }
        }
        out
    }

    /// L ↦ Π⁰_g(L) on V₁ for L ∈ Hom(ω, V₁), with L(ω_j) = Σ_a x[a·4+j] ν_a.
    pub fn operator(&self) -> SymMat {
        let cols: Vec<Vec<FieldElem>> = (0..40)
            .map(|col| {
                let (m, j) = (col / 4, col % 4);
                let mut nab = vec![vec![FieldElem::zero(); 16]; 4];
                nab[j] = self.nu[m].clone();
                self.pi0_on_nu(&Connection::from_columns(&nab))
            })
            .collect();
        Mat::from_columns(40, &cols).with_labels(codomain_labels(), domain_labels())
    }

    pub fn braiding(&self) -> &BraidingOperator {
        self.braiding
    }
}

/// Labels ν_a⊗ω_j, index a·4 + j.
pub fn domain_labels() -> Vec<String> {
    (0..40).map(|i| format!("nu{}w{}", i / 4 + 1, i % 4 + 1)).collect()
}

/// Labels ω_c⊗ν_b, index c·10 + b.
pub fn codomain_labels() -> Vec<String> {
    (0..40).map(|i| format!("w{}nu{}", i / 10 + 1, i % 10 + 1)).collect()
}

/// g⁽²⁾(X, Y) = Σ X_ab Y_cd g(ω_b⊗ω_c) g(ω_a⊗ω_d).
pub fn g2(g: &SymMat, x: &[FieldElem], y: &[FieldElem]) -> FieldElem {
    let mut acc = FieldElem::zero();
    for (i, xv) in x.iter().enumerate() {
        if xv.is_zero() {
            continue;
        }
        let (a, b) = (i / 4, i % 4);
        for (j, yv) in y.iter().enumerate() {
            if yv.is_zero() {
                continue;
            }
            let (c, d) = (j / 4, j % 4);
            let w = g.get(b, c).mul_ref(g.get(a, d));
            if !w.is_zero() {
                acc = acc.add_ref(&xv.mul_ref(yv).mul_ref(&w));
            }
        }
    }
    acc
}

/// The 40×40 map Φ_g from Hom(ω, V₁) (basis ν_a⊗ω_j) to Hom(V₁, ω) (basis ω_c⊗ν_b).
pub fn phi_g(g: &Metric, psym: &SymMat, data: &EigenData) -> Result<SymMat, ConnectionError> {
    let g_inv = g.inverse()?;
    let p23: SymMat = Mat::identity(4).kron(psym);
    let cols: Vec<Vec<FieldElem>> = (0..40)
        .map(|col| {
            let (m, j) = (col / 4, col % 4);
            let mut y = vec![FieldElem::zero(); 64];
            for (x, v) in data.nu[m].iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                for a in 0..4 {
                    y[x * 4 + a] = v.mul_ref(g_inv.get(j, a));
                }
            }
            let z = p23.mul_vec(&y).expect("64-vector");
            let mut out = Vec::with_capacity(40);
            for c in 0..4 {
                for nb in &data.nu {
                    out.push(g2(&g.g, &z[c * 16..c * 16 + 16], nb));
                }
            }
            out
        })
        .collect();
    Ok(Mat::from_columns(40, &cols).with_labels(codomain_labels(), domain_labels()))
}

/// Result of the Levi-Civita solve together with its post-checks.
#[derive(Clone, Debug)]
pub struct LeviCivita {
    pub connection: Connection,
    /// Coefficients of the V₁-valued correction, index a·4 + j.
    pub correction: Vec<FieldElem>,
    pub torsion_zero: bool,
    pub pi0_zero: bool,
}

/// ∇ = ∇₀ + L with L: ω → V₁ solving Π⁰_g(∇₀ + L) = 0.
pub fn levi_civita(
    g: &Metric,
    sign: Sign,
    b: &BraidingOperator,
    psym: &SymMat,
    data: &EigenData,
) -> Result<LeviCivita, ConnectionError> {
    g.check_nondegenerate()?;
    let nabla0 = build_nabla0(sign, b);
    let compat = Compat::new(b, psym, data, g);
    let op = compat.operator();
    let rhs: Vec<FieldElem> = compat.pi0_on_nu(&nabla0).iter().map(FieldElem::neg_ref).collect();
    let x = match solve(&op, &rhs) {
        Ok(x) => x,
        Err(LinalgError::SingularMatrix { column }) => return Err(ConnectionError::PhiSingular { column }),
        Err(e) => return Err(e.into()),
    };
    let cols: Vec<Vec<FieldElem>> = (0..4)
        .map(|j| {
            let mut col = nabla0.column(j);
            for (m, nu) in data.nu.iter().enumerate() {
                let c = &x[m * 4 + j];
                if c.is_zero() {
                    continue;
                }
                for (e, v) in col.iter_mut().zip(nu) {
                    *e = e.add_ref(&v.mul_ref(c));
                }
            }
            col
        })
        .collect();
    let connection = Connection::from_columns(&cols);
    let torsion_zero = torsion(&connection, sign, b).is_zero();
    let pi0_zero = compat.pi0(&connection).is_zero();
    Ok(LeviCivita { connection, correction: x, torsion_zero, pi0_zero })
}

/// Whether m has trivial right kernel. Full column rank at a specialisation
/// implies full rank over the field; otherwise the kernel is computed exactly.
pub fn kernel_trivial(m: &SymMat) -> bool {
    if let Ok(num) = m.eval_at(&screening_point()) {
        if rank(&num) == m.cols() {
            return true;
        }
    }
    kernel(m).is_empty()
}

/// ∇₀ against its closed-form displays, per column.
#[derive(Clone, Debug, Serialize)]
pub struct DisplayCheck {
    pub index: usize,
    pub diff: Vec<crate::calculus::EntryDiff>,
}

pub fn compare_nabla0_displays(
    sign: Sign,
    b: &BraidingOperator,
    data: &EigenData,
) -> Result<Vec<DisplayCheck>, ConnectionError> {
    let shown = crate::calculus::nabla0_displays(sign, &data.t_binding)?;
    let n0 = build_nabla0(sign, b);
    Ok((0..4)
        .map(|i| DisplayCheck { index: i + 1, diff: crate::calculus::diff_vectors(&shown[i], &n0.column(i)) })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{build_psym, select_variant};

    #[test]
    fn nabla0_of_w4_is_zero() {
        let sel = select_variant(None).unwrap();
        let n0 = build_nabla0(Sign::Plus, &sel.braiding);
        assert!(n0.column(3).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn zero_connection_has_torsion_d() {
        let sel = select_variant(None).unwrap();
        let t = torsion(&Connection::zero(), Sign::Plus, &sel.braiding);
        assert!(t.column(3).iter().all(|x| x.is_zero()));
        let d1 = wedge_rep(&sel.braiding, &crate::calculus::d_lift(Sign::Plus, 1));
        assert_eq!(t.column(0), d1);
        assert!(d1.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn pi0_of_zero_connection_vanishes() {
        let sel = select_variant(None).unwrap();
        let p = build_psym(&sel.braiding);
        let g = example_metric(&sel.braiding).unwrap();
        let c = Compat::new(&sel.braiding, &p, &sel.data, &g);
        assert!(c.pi0(&Connection::zero()).is_zero());
    }
}
