use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{FieldElem, SPoly};

use super::elim::{bareiss, ff_gauss_jordan, rref_kernel, rref_solve};
use super::Mat;

/// Commutative ring with exact division where possible.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// `self / d` if `d` divides `self` exactly.
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    /// Determinant of a square block; the default is fraction-free
    /// elimination directly over the field.
    fn block_det(m: &Mat<Self>) -> Self {
        bareiss(m)
    }

    /// Right null space of a block.
    fn block_kernel(m: &Mat<Self>) -> Vec<Vec<Self>> {
        rref_kernel(m)
    }

    /// Solutions of a square block for several right-hand sides, or the
    /// first column without a pivot.
    fn block_solve(m: &Mat<Self>, rhs: &[Vec<Self>]) -> Result<Vec<Vec<Self>>, usize> {
        rref_solve(m, rhs)
    }
}

impl Ring for BigInt {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }
}

impl Ring for BigRational {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        (!d.is_zero()).then(|| self / d)
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl Ring for SPoly {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        SPoly::div_exact(self, d)
    }
}

impl Ring for FieldElem {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        self.div_ref(d).ok()
    }
}

impl Field for FieldElem {
    fn inv(&self) -> Option<Self> {
        self.invert().ok()
    }

    /// Clear denominators row by row, eliminate over Z[q,t,k][s], then divide
    /// by the product of the row multipliers.
    fn block_det(m: &Mat<Self>) -> Self {
        let n = m.rows();
        let mut mult = crate::field::BasePoly::one();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            let (mi, row) = SPoly::clear_row(m.row(i)).expect("canonical entries");
            mult = mult.mul(&mi);
            data.extend(row);
        }
        let pm = Mat::from_vec(n, n, data);
        let d = bareiss(&pm);
        FieldElem::from_parts(d.p, d.q, mult).expect("nonzero multiplier")
    }

    fn block_kernel(m: &Mat<Self>) -> Vec<Vec<Self>> {
        let n = m.cols();
        let mut a = cleared_rows(m, &[]);
        let pivots = ff_gauss_jordan(&mut a, n);
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = vec![FieldElem::zero(); n];
                v[f] = FieldElem::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = ratio(&a[r][f], &a[r][pc]).neg_ref();
                }
                v
            })
            .collect()
    }

    fn block_solve(m: &Mat<Self>, rhs: &[Vec<Self>]) -> Result<Vec<Vec<Self>>, usize> {
        let n = m.cols();
        let mut a = cleared_rows(m, rhs);
        let pivots = ff_gauss_jordan(&mut a, n);
        if pivots.len() < n {
            return Err((0..n).find(|x| !pivots.contains(x)).unwrap());
        }
        Ok((0..rhs.len()).map(|k| (0..n).map(|r| ratio(&a[r][n + k], &a[r][r])).collect()).collect())
    }
}

/// Rows of [m | rhs…] with denominators cleared row by row.
fn cleared_rows(m: &Mat<FieldElem>, rhs: &[Vec<FieldElem>]) -> Vec<Vec<SPoly>> {
    (0..m.rows())
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend(rhs.iter().map(|b| b[i].clone()));
            SPoly::clear_row(&row).expect("canonical entries").1
        })
        .collect()
}

fn ratio(n: &SPoly, d: &SPoly) -> FieldElem {
    if n.is_zero() {
        return FieldElem::zero();
    }
    n.to_field().div_ref(&d.to_field()).expect("nonzero pivot")
}
