//! Rational functions in Q(q,t,k), kept in lowest terms.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::poly::{gcd, BasePoly};
use super::FieldError;

/// `num / den` with gcd(num, den) = 1 and a positive leading coefficient of `den`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BaseRat {
    num: BasePoly,
    den: BasePoly,
}

impl BaseRat {
    pub fn zero() -> Self {
        BaseRat { num: BasePoly::zero(), den: BasePoly::one() }
    }

    pub fn one() -> Self {
        BaseRat { num: BasePoly::one(), den: BasePoly::one() }
    }

    pub fn from_poly(p: BasePoly) -> Self {
        BaseRat { num: p, den: BasePoly::one() }
    }

    pub fn from_int(n: BigInt) -> Self {
        Self::from_poly(BasePoly::constant(n))
    }

    /// Build and reduce `num / den`.
    pub fn new(num: BasePoly, den: BasePoly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: BasePoly, den: BasePoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_one() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            }
        };
        if den.leading_coeff_sign_negative() {
            BaseRat { num: num.neg(), den: den.neg() }
        } else {
            BaseRat { num, den }
        }
    }

    pub fn num(&self) -> &BasePoly {
        &self.num
    }

    pub fn den(&self) -> &BasePoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn neg(&self) -> Self {
        BaseRat { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.add_signed(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add_signed(o, true)
    }

    fn add_signed(&self, o: &Self, negate: bool) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg() } else { o.clone() };
        }
        let combine = |x: &BasePoly, y: &BasePoly| if negate { x.sub(y) } else { x.add(y) };
        if self.den == o.den {
            return Self::reduce(combine(&self.num, &o.num), self.den.clone());
        }
        if self.den.is_one() {
            return Self::reduce(combine(&self.num.mul(&o.den), &o.num), o.den.clone());
        }
        if o.den.is_one() {
            return Self::reduce(combine(&self.num, &o.num.mul(&self.den)), self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = o.den.div_exact(&g).unwrap();
        let num = combine(&self.num.mul(&d2), &o.num.mul(&d1));
        if num.is_zero() {
            return Self::zero();
        }
        let den = self.den.mul(&d2);
        if g.is_one() {
            return BaseRat { num, den };
        }
        let h = gcd(&num, &g);
        if h.is_one() {
            BaseRat { num, den }
        } else {
            Self::reduce_sign(num.div_exact(&h).unwrap(), den.div_exact(&h).unwrap())
        }
    }

    fn reduce_sign(num: BasePoly, den: BasePoly) -> Self {
        if den.leading_coeff_sign_negative() {
            BaseRat { num: num.neg(), den: den.neg() }
        } else {
            BaseRat { num, den }
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let (n1, d2) = cancel(&self.num, &o.den);
        let (n2, d1) = cancel(&o.num, &self.den);
        Self::reduce_sign(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn mul_poly(&self, p: &BasePoly) -> Self {
        self.mul(&BaseRat::from_poly(p.clone()))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::reduce_sign(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn eval(&self, pt: &[BigRational; 3]) -> Result<BigRational, FieldError> {
        let d = self.den.eval(pt);
        if d.is_zero() {
            return Err(FieldError::EvalDenominatorZero);
        }
        Ok(self.num.eval(pt) / d)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        Some(BigRational::new(self.num.as_constant()?, self.den.as_constant()?))
    }
}

fn cancel(a: &BasePoly, b: &BasePoly) -> (BasePoly, BasePoly) {
    if a.is_one() || b.is_one() {
        return (a.clone(), b.clone());
    }
    let g = gcd(a, b);
    if g.is_one() {
        (a.clone(), b.clone())
    } else {
        (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap())
    }
}

impl Default for BaseRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<BigRational> for BaseRat {
    fn from(r: BigRational) -> Self {
        let (n, d) = (r.numer().clone(), r.denom().clone());
        Self::reduce(BasePoly::constant(n), BasePoly::constant(d))
    }
}

impl fmt::Display for BaseRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let n = if self.num.len() > 1 { format!("({})", self.num) } else { self.num.to_string() };
            let d = super::poly::atom(&self.den);
            write!(f, "{} / {}", n, d)
        }
    }
}

impl fmt::Debug for BaseRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_reduces() {
        let q = BasePoly::var(0);
        let one = BasePoly::one();
        let a = BaseRat::new(one.clone(), q.add(&one)).unwrap();
        let b = BaseRat::new(q.clone(), q.add(&one)).unwrap();
        assert!(a.add(&b).is_one());
    }

    #[test]
    fn denominator_sign_is_positive() {
        let q = BasePoly::var(0);
        let r = BaseRat::new(BasePoly::one(), q.neg()).unwrap();
        assert_eq!(r.to_string(), "-1 / q");
    }
}
