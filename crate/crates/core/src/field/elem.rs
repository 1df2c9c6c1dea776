//! Elements a + b·s of F = Q(q,t,k)[s]/(s² − 1 − q²).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{lcm, write_terms, BasePoly};
use super::rat::BaseRat;
use super::FieldError;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldElem {
    a: BaseRat,
    b: BaseRat,
}

/// 1 + q².
pub fn r_poly() -> BasePoly {
    BasePoly::var(0).pow(2).add(&BasePoly::one())
}

/// A specialisation point (q₀, t₀, k₀) together with the chosen value of s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub q: BigRational,
    pub t: BigRational,
    pub k: BigRational,
    pub s: BigRational,
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

impl Point {
    /// Point with s = +√(1+q₀²), which must be rational.
    pub fn new(q: BigRational, t: BigRational, k: BigRational) -> Result<Self, FieldError> {
        let r = BigRational::one() + &q * &q;
        let s = rational_sqrt(&r).ok_or(FieldError::NonPythagoreanPoint)?;
        Ok(Point { q, t, k, s })
    }

    /// The Pythagorean point q = (u²−1)/(2u), s = (u²+1)/(2u).
    pub fn from_u(u: &BigRational, t: BigRational, k: BigRational) -> Self {
        let two_u = u * BigRational::from_integer(2.into());
        let u2 = u * u;
        let q = (&u2 - BigRational::one()) / &two_u;
        let s = (&u2 + BigRational::one()) / &two_u;
        Point { q, t, k, s }
    }

    /// Same point with s replaced by −s (the Galois conjugate).
    pub fn conjugate(&self) -> Self {
        Point { s: -self.s.clone(), ..self.clone() }
    }

    fn base(&self) -> [BigRational; 3] {
        [self.q.clone(), self.t.clone(), self.k.clone()]
    }
}

impl FieldElem {
    pub fn new(a: BaseRat, b: BaseRat) -> Self {
        FieldElem { a, b }
    }

    pub fn from_rat(a: BaseRat) -> Self {
        FieldElem { a, b: BaseRat::zero() }
    }

    pub fn from_poly(p: BasePoly) -> Self {
        Self::from_rat(BaseRat::from_poly(p))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_poly(BasePoly::from_i64(n))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_rat(BaseRat::from(r.clone()))
    }

    pub fn q() -> Self {
        Self::from_poly(BasePoly::var(0))
    }

    pub fn t() -> Self {
        Self::from_poly(BasePoly::var(1))
    }

    pub fn k() -> Self {
        Self::from_poly(BasePoly::var(2))
    }

    pub fn s() -> Self {
        FieldElem { a: BaseRat::zero(), b: BaseRat::one() }
    }

    /// r = 1 + q².
    pub fn r() -> Self {
        Self::from_poly(r_poly())
    }

    pub fn a(&self) -> &BaseRat {
        &self.a
    }

    pub fn b(&self) -> &BaseRat {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn has_s(&self) -> bool {
        !self.b.is_zero()
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        FieldElem { a: self.a.add(&o.a), b: self.b.add(&o.b) }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        FieldElem { a: self.a.sub(&o.a), b: self.b.sub(&o.b) }
    }

    pub fn neg_ref(&self) -> Self {
        FieldElem { a: self.a.neg(), b: self.b.neg() }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.b.is_zero() && o.b.is_zero() {
            return Self::from_rat(self.a.mul(&o.a));
        }
        if self.b.is_zero() {
            return FieldElem { a: self.a.mul(&o.a), b: self.a.mul(&o.b) };
        }
        if o.b.is_zero() {
            return FieldElem { a: self.a.mul(&o.a), b: self.b.mul(&o.a) };
        }
        let bb = self.b.mul(&o.b).mul_poly(&r_poly());
        FieldElem {
            a: self.a.mul(&o.a).add(&bb),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.a)),
        }
    }

    /// The Galois conjugate a − b·s.
    pub fn conj(&self) -> Self {
        FieldElem { a: self.a.clone(), b: self.b.neg() }
    }

    /// a² − (1+q²)·b², the norm to Q(q,t,k).
    pub fn norm(&self) -> BaseRat {
        self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul_poly(&r_poly()))
    }

    pub fn invert(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Self::from_rat(self.a.inv()?));
        }
        let n = self.norm().inv()?;
        Ok(FieldElem { a: self.a.mul(&n), b: self.b.neg().mul(&n) })
    }

    pub fn div_ref(&self, o: &Self) -> Result<Self, FieldError> {
        Ok(self.mul_ref(&o.invert()?))
    }

    pub fn pow(&self, n: i32) -> Result<Self, FieldError> {
        let base = if n < 0 { self.invert()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_ref(&b);
            }
        }
        Ok(acc)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.mul_ref(&Self::from_i64(n))
    }

    /// Exact value at the point given by q₀, t₀, k₀ with s = +√(1+q₀²).
    pub fn eval(&self, q0: &BigRational, t0: &BigRational, k0: &BigRational) -> Result<BigRational, FieldError> {
        let pt = Point::new(q0.clone(), t0.clone(), k0.clone())?;
        self.eval_at(&pt)
    }

    pub fn eval_at(&self, pt: &Point) -> Result<BigRational, FieldError> {
        let base = pt.base();
        let a = self.a.eval(&base)?;
        if self.b.is_zero() {
            return Ok(a);
        }
        Ok(a + self.b.eval(&base)? * &pt.s)
    }

    /// Substitute field elements for q, t, k (s is kept; q must be mapped to q
    /// for the relation s² = 1 + q² to remain valid).
    pub fn substitute(&self, vals: &[FieldElem; 3]) -> Result<Self, FieldError> {
        let sub = |p: &BasePoly| p.substitute(vals, |c| FieldElem::from_poly(BasePoly::constant(c.clone())));
        let part = |x: &BaseRat| -> Result<FieldElem, FieldError> {
            let n = sub(x.num());
            if x.den().is_one() {
                return Ok(n);
            }
            n.div_ref(&sub(x.den()))
        };
        let a = part(&self.a)?;
        if self.b.is_zero() {
            return Ok(a);
        }
        let b = part(&self.b)?;
        Ok(a.add_ref(&b.mul_ref(&Self::s())))
    }

    /// Replace t and k by rationals, leaving q and s symbolic.
    pub fn specialize_tk(&self, t0: &BigRational, k0: &BigRational) -> Result<Self, FieldError> {
        self.substitute(&[Self::q(), Self::from_rational(t0), Self::from_rational(k0)])
    }

    /// Common-denominator form (P, Q, D) with self = (P + Q·s)/D.
    pub fn common_form(&self) -> (BasePoly, BasePoly, BasePoly) {
        let d = lcm(self.a.den(), self.b.den());
        let p = self.a.num().mul(&d.div_exact(self.a.den()).unwrap());
        let q = self.b.num().mul(&d.div_exact(self.b.den()).unwrap());
        (p, q, d)
    }

    /// Assemble (P + Q·s)/D.
    pub fn from_parts(p: BasePoly, q: BasePoly, d: BasePoly) -> Result<Self, FieldError> {
        Ok(FieldElem { a: BaseRat::new(p, d.clone())?, b: BaseRat::new(q, d)? })
    }

    /// If the element is c·t^i·k^j·s^n with rational c and integers i, j, n,
    /// return (c, i, j, n).
    pub fn as_unit(&self) -> Option<(BigRational, i64, i64, i64)> {
        let (x, parity) = if self.b.is_zero() {
            (&self.a, 0)
        } else if self.a.is_zero() {
            (&self.b, 1)
        } else {
            return None;
        };
        let (cn, en) = split_r_monomial(x.num())?;
        let (cd, ed) = split_r_monomial(x.den())?;
        let c = BigRational::new(cn, cd);
        let n = 2 * (en[0] - ed[0]) + parity;
        Some((c, en[1] - ed[1], en[2] - ed[2], n))
    }
}

/// Split p = c · (1+q²)^m · t^i · k^j; returns (c, [m, i, j]).
fn split_r_monomial(p: &BasePoly) -> Option<(BigInt, [i64; 3])> {
    let r = r_poly();
    let mut m = 0i64;
    let mut cur = p.clone();
    while cur.involves(0) {
        cur = cur.div_exact(&r)?;
        m += 1;
    }
    if !cur.is_monomial() {
        return None;
    }
    let (e, c) = cur.leading()?.clone();
    Some((c, [m, e[1] as i64, e[2] as i64]))
}

impl Zero for FieldElem {
    fn zero() -> Self {
        FieldElem { a: BaseRat::zero(), b: BaseRat::zero() }
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
}

impl One for FieldElem {
    fn one() -> Self {
        FieldElem { a: BaseRat::one(), b: BaseRat::zero() }
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, o: Self) -> Self {
        self.sub_ref(&o)
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, o: &FieldElem) -> FieldElem {
        self.add_ref(o)
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, o: &FieldElem) -> FieldElem {
        self.sub_ref(o)
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, o: &FieldElem) -> FieldElem {
        self.mul_ref(o)
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        FieldElem::from_i64(n)
    }
}

/// Canonical text: `(P + Q*s) / D` over the least common denominator.
impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q, d) = self.common_form();
        let mut terms = p.signed_terms("");
        terms.extend(q.signed_terms("s"));
        let mut num = String::new();
        write_terms(&mut num, &terms);
        if d.is_one() {
            return f.write_str(&num);
        }
        let num = if terms.len() > 1 { format!("({})", num) } else { num };
        let den = super::poly::atom(&d);
        write!(f, "{} / {}", num, den)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
