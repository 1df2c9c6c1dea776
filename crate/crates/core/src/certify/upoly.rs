//! Dense univariate polynomials over Q: Newton interpolation, square-free
//! parts and Sturm-sequence root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::BasePoly;

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UPoly {
    c: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl UPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn constant(x: BigRational) -> Self {
        Self::new(vec![x])
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| rat(x)).collect())
    }

    /// The polynomial in q of a BasePoly that involves only q.
    pub fn from_base(p: &BasePoly) -> Option<Self> {
        if p.involves(1) || p.involves(2) {
            return None;
        }
        let deg = p.degree_in(0) as usize;
        let mut c = vec![BigRational::zero(); deg + 1];
        for (e, x) in p.terms() {
            c[e[0] as usize] = BigRational::from_integer(x.clone());
        }
        Some(Self::new(c))
    }

    /// Scale to a primitive integer polynomial with positive leading
    /// coefficient and return it as a BasePoly in q.
    pub fn to_base(&self) -> BasePoly {
        let p = self.primitive();
        BasePoly::from_terms(
            p.c.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| ([i as u32, 0, 0], x.numer().clone())),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial has degree 0 here.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = BigRational::zero();
        Self::new((0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.c.iter().map(|x| x * k).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.c.clone();
        let dl = d.lead();
        let dd = d.degree();
        if self.is_zero() || self.degree() < dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); self.degree() - dd + 1];
        for i in (0..q.len()).rev() {
            let coef = &r[i + dd] / &dl;
            if !coef.is_zero() {
                for (j, x) in d.c.iter().enumerate() {
                    r[i + j] -= &coef * x;
                }
            }
            q[i] = coef;
        }
        (Self::new(q), Self::new(r))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(i, x)| x * rat(i as i64)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.lead();
        self.scale(&l.recip())
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let den = self.c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self.c.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let g = if self.lead().is_negative() { -g } else { g };
        Self::new(ints.into_iter().map(|x| BigRational::from_integer(x / &g)).collect())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.c.iter().rev().fold(BigRational::zero(), |acc, a| acc * x + a)
    }

    pub fn divides(&self, o: &Self) -> bool {
        o.div_rem(self).1.is_zero()
    }

    /// Newton interpolation through (x_i, y_i) with distinct x_i.
    pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Self {
        let n = xs.len();
        let mut dd = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
            }
        }
        let mut p = Self::constant(dd[n - 1].clone());
        for i in (0..n - 1).rev() {
            p = p.mul(&Self::new(vec![-xs[i].clone(), BigRational::one()])).add(&Self::constant(dd[i].clone()));
        }
        p
    }

    /// Sturm sequence p, p', −rem(…), …
    pub fn sturm(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].div_rem(&seq[n - 1]).1.neg();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        seq
    }
}

fn sign_changes(seq: &[UPoly], x: &BigRational) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| {
            let v = p.eval(x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in (lo, hi] of a square-free polynomial.
pub fn count_roots(seq: &[UPoly], lo: &BigRational, hi: &BigRational) -> usize {
    sign_changes(seq, lo).saturating_sub(sign_changes(seq, hi))
}

/// An isolating interval (lo, hi] containing exactly one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        self.lo < o.hi && o.lo < self.hi
    }
}

/// Isolate the roots of a square-free `p` in the open interval (lo, hi) and
/// refine each interval to width at most `width`. Every returned interval
/// (lo', hi'] holds exactly one root and p is nonzero at both endpoints.
pub fn isolate_roots(p: &UPoly, lo: &BigRational, hi: &BigRational, width: &BigRational) -> Vec<RootInterval> {
    if p.degree() == 0 || lo >= hi {
        return Vec::new();
    }
    let seq = p.sturm();
    let hi_root = p.eval(hi).is_zero();
    let count = |a: &BigRational, b: &BigRational| {
        let n = count_roots(&seq, a, b);
        if hi_root && b == hi {
            n - 1
        } else {
            n
        }
    };
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let n = count(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 && !p.eval(&b).is_zero() {
            out.push(refine(&seq, RootInterval { lo: a, hi: b }, width));
            continue;
        }
        let mid = (&a + &b) / rat(2);
        if p.eval(&mid).is_zero() {
            let mut eps = (&b - &a).min(width.clone()) / rat(4);
            loop {
                let l = &mid - &eps;
                let r = &mid + &eps;
                if count_roots(&seq, &l, &r) == 1 && !p.eval(&l).is_zero() && !p.eval(&r).is_zero() {
                    out.push(RootInterval { lo: l.clone(), hi: r.clone() });
                    stack.push((a, l));
                    stack.push((r, b));
                    break;
                }
                eps /= rat(2);
            }
            continue;
        }
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Whether p changes sign exactly once on the interval per its Sturm count.
pub fn certifies_single_root(p: &UPoly, iv: &RootInterval) -> bool {
    let seq = p.sturm();
    count_roots(&seq, &iv.lo, &iv.hi) == 1 && (p.eval(&iv.lo) * p.eval(&iv.hi)).is_negative()
}

fn refine(seq: &[UPoly], mut iv: RootInterval, width: &BigRational) -> RootInterval {
    while iv.width() > *width {
        let mid = (&iv.lo + &iv.hi) / rat(2);
        if seq[0].eval(&mid).is_zero() {
            let eps = (&iv.hi - &iv.lo) / rat(4);
            iv = RootInterval { lo: &mid - &eps, hi: &mid + &eps };
        } else if count_roots(seq, &iv.lo, &mid) == 1 {
            iv.hi = mid;
        } else {
            iv.lo = mid;
        }
    }
    iv
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_base())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_identity() {
        // q^10 - q^4 - q^2 + 1 = (q^2 - 1)(q^8 + q^6 + q^4 - 1)
        let p = UPoly::from_i64s(&[1, 0, -1, 0, -1, 0, 0, 0, 0, 0, 1]);
        let a = UPoly::from_i64s(&[-1, 0, 1]);
        let b = UPoly::from_i64s(&[-1, 0, 0, 0, 1, 0, 1, 0, 1]);
        assert_eq!(a.mul(&b), p);
        assert!(b.divides(&p));
    }

    #[test]
    fn octic_root_between_082_and_083() {
        let b = UPoly::from_i64s(&[-1, 0, 0, 0, 1, 0, 1, 0, 1]);
        let lo = BigRational::new(82.into(), 100.into());
        let hi = BigRational::new(83.into(), 100.into());
        assert!(b.eval(&lo).is_negative());
        assert!(b.eval(&hi).is_positive());
        let w = BigRational::new(1.into(), 1_000_000.into());
        let roots = isolate_roots(&b, &rat(0), &rat(1), &w);
        assert_eq!(roots.len(), 1);
        assert!(roots[0].lo >= lo && roots[0].hi <= hi && roots[0].width() <= w);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = UPoly::from_i64s(&[3, -1, 0, 2]);
        let xs: Vec<BigRational> = (0..4).map(rat).collect();
        let ys: Vec<BigRational> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(UPoly::interpolate(&xs, &ys), p);
    }

    #[test]
    fn square_free_drops_repeated_factor() {
        let a = UPoly::from_i64s(&[-1, 1]);
        let p = a.mul(&a).mul(&UPoly::from_i64s(&[1, 0, 1]));
        assert_eq!(p.square_free().monic(), a.mul(&UPoly::from_i64s(&[1, 0, 1])).monic());
    }
}
