//! The polynomial ring Z[q,t,k][s]/(s² − 1 − q²), used for fraction-free elimination.

use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::elem::{r_poly, FieldElem, Point};
use super::poly::BasePoly;
use super::FieldError;

/// p + q·s with integer-polynomial parts.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SPoly {
    pub p: BasePoly,
    pub q: BasePoly,
}

impl SPoly {
    pub fn new(p: BasePoly, q: BasePoly) -> Self {
        SPoly { p, q }
    }

    pub fn from_base(p: BasePoly) -> Self {
        SPoly { p, q: BasePoly::zero() }
    }

    fn norm(&self) -> BasePoly {
        self.p.mul(&self.p).sub(&self.q.mul(&self.q).mul(&r_poly()))
    }

    /// Exact quotient in the ring, if it exists.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.q.is_zero() {
            return Some(SPoly { p: self.p.div_exact(&d.p)?, q: self.q.div_exact(&d.p)? });
        }
        let n = d.norm();
        let conj = SPoly { p: d.p.clone(), q: d.q.neg() };
        let m = self.clone() * conj;
        Some(SPoly { p: m.p.div_exact(&n)?, q: m.q.div_exact(&n)? })
    }

    pub fn to_field(&self) -> FieldElem {
        FieldElem::from_parts(self.p.clone(), self.q.clone(), BasePoly::one()).expect("unit denominator")
    }

    pub fn eval_at(&self, pt: &Point) -> BigRational {
        let base = [pt.q.clone(), pt.t.clone(), pt.k.clone()];
        let a = self.p.eval(&base);
        if self.q.is_zero() {
            a
        } else {
            a + self.q.eval(&base) * &pt.s
        }
    }

    /// Degree in q counting s as degree one.
    pub fn q_degree(&self) -> u32 {
        let dp = if self.p.is_zero() { 0 } else { self.p.degree_in(0) };
        let dq = if self.q.is_zero() { 0 } else { self.q.degree_in(0) + 1 };
        dp.max(dq)
    }

    /// Row-wise clearing: returns (m, [x_i·m]) where m is the least common
    /// denominator of the given field elements.
    pub fn clear_row(row: &[FieldElem]) -> Result<(BasePoly, Vec<SPoly>), FieldError> {
        let mut m = BasePoly::one();
        for x in row {
            m = super::poly::lcm(&m, x.a().den());
            m = super::poly::lcm(&m, x.b().den());
        }
        let out = row
            .iter()
            .map(|x| {
                let pa = x.a().num().mul(&m.div_exact(x.a().den()).unwrap());
                let pb = x.b().num().mul(&m.div_exact(x.b().den()).unwrap());
                SPoly { p: pa, q: pb }
            })
            .collect();
        Ok((m, out))
    }
}

impl Zero for SPoly {
    fn zero() -> Self {
        SPoly { p: BasePoly::zero(), q: BasePoly::zero() }
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl One for SPoly {
    fn one() -> Self {
        SPoly::from_base(BasePoly::one())
    }
}

impl Add for SPoly {
    type Output = SPoly;
    fn add(self, o: Self) -> Self {
        SPoly { p: self.p.add(&o.p), q: self.q.add(&o.q) }
    }
}

impl Sub for SPoly {
    type Output = SPoly;
    fn sub(self, o: Self) -> Self {
        SPoly { p: self.p.sub(&o.p), q: self.q.sub(&o.q) }
    }
}

impl Neg for SPoly {
    type Output = SPoly;
    fn neg(self) -> Self {
        SPoly { p: self.p.neg(), q: self.q.neg() }
    }
}

impl Mul for SPoly {
    type Output = SPoly;
    fn mul(self, o: Self) -> Self {
        if self.q.is_zero() && o.q.is_zero() {
            return SPoly::from_base(self.p.mul(&o.p));
        }
        let p = self.p.mul(&o.p).add(&self.q.mul(&o.q).mul(&r_poly()));
        let q = self.p.mul(&o.q).add(&self.q.mul(&o.p));
        SPoly { p, q }
    }
}
