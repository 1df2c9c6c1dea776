//! Sparse multivariate polynomials over Z in the indeterminates q, t, k.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponents of (q, t, k).
pub type Exp = [u32; 3];

pub const VAR_NAMES: [&str; 3] = ["q", "t", "k"];

/// Polynomial in Z[q,t,k]. Terms are kept sorted by exponent in descending
/// lexicographic order (q before t before k) and carry no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BasePoly {
    terms: Vec<(Exp, BigInt)>,
}

fn exp_add(a: &Exp, b: &Exp) -> Exp {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn exp_divides(d: &Exp, n: &Exp) -> bool {
    d.iter().zip(n.iter()).all(|(x, y)| x <= y)
}

fn exp_sub(a: &Exp, b: &Exp) -> Exp {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

impl BasePoly {
    pub fn zero() -> Self {
        BasePoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            BasePoly { terms: vec![([0, 0, 0], c)] }
        }
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(BigInt::from(c))
    }

    pub fn monomial(c: BigInt, e: Exp) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            BasePoly { terms: vec![(e, c)] }
        }
    }

    /// The indeterminate with index `v` (0 = q, 1 = t, 2 = k).
    pub fn var(v: usize) -> Self {
        let mut e = [0; 3];
        e[v] = 1;
        Self::monomial(BigInt::one(), e)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp, BigInt)>>(it: I) -> Self {
        let mut v: Vec<(Exp, BigInt)> = it.into_iter().collect();
        v.sort_by_key(|x| std::cmp::Reverse(x.0));
        let mut out: Vec<(Exp, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((e, c));
                }
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        BasePoly { terms: out }
    }

    fn from_map(m: BTreeMap<Exp, BigInt>) -> Self {
        let terms = m.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        BasePoly { terms }
    }

    pub fn terms(&self) -> &[(Exp, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == [0, 0, 0] && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant value if the polynomial has no indeterminates.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(e, c)] if *e == [0, 0, 0] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Exp, BigInt)> {
        self.terms.first()
    }

    pub fn leading_coeff_sign_negative(&self) -> bool {
        self.terms.first().map(|(_, c)| c.is_negative()).unwrap_or(false)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[v]).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn involves(&self, v: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[v] > 0)
    }

    pub fn neg(&self) -> Self {
        BasePoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                std::cmp::Ordering::Less
            } else if j == b.len() {
                std::cmp::Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        BasePoly { terms: out }
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
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: BTreeMap<Exp, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = exp_add(ea, eb);
                let p = ca * cb;
                match acc.get_mut(&e) {
                    Some(x) => *x += p,
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        Self::from_map(acc)
    }

    pub fn mul_term(&self, e: &Exp, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BasePoly { terms: self.terms.iter().map(|(x, d)| (exp_add(x, e), d * c)).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.mul_term(&[0, 0, 0], c)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Divide every coefficient by the integer `c`, which must divide them all.
    pub fn div_int_exact(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        BasePoly { terms: self.terms.iter().map(|(e, d)| (*e, d / c)).collect() }
    }

    /// gcd of the integer coefficients (non-negative).
    pub fn int_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Exp {
        let mut m = [u32::MAX; 3];
        for (e, _) in &self.terms {
            for v in 0..3 {
                m[v] = m[v].min(e[v]);
            }
        }
        if self.terms.is_empty() {
            [0, 0, 0]
        } else {
            m
        }
    }

    fn div_monomial(&self, m: &Exp) -> Self {
        if *m == [0, 0, 0] {
            return self.clone();
        }
        BasePoly { terms: self.terms.iter().map(|(e, c)| (exp_sub(e, m), c.clone())).collect() }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self` in Z[q,t,k].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.is_one() {
            return Some(self.clone());
        }
        if d.terms.len() == 1 {
            let (de, dc) = &d.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                if !exp_divides(de, e) {
                    return None;
                }
                let (qc, rc) = c.div_rem(dc);
                if !rc.is_zero() {
                    return None;
                }
                out.push((exp_sub(e, de), qc));
            }
            return Some(BasePoly { terms: out });
        }
        for v in 0..3 {
            if d.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let (lde, ldc) = d.terms[0].clone();
        let mut rem: BTreeMap<Exp, BigInt> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Exp, BigInt)> = Vec::new();
        while let Some((e, c)) = rem.iter().next_back().map(|(e, c)| (*e, c.clone())) {
            if !exp_divides(&lde, &e) {
                return None;
            }
            let (qc, rc) = c.div_rem(&ldc);
            if !rc.is_zero() {
                return None;
            }
            let qe = exp_sub(&e, &lde);
            for (de, dc) in &d.terms {
                let te = exp_add(de, &qe);
                let delta = dc * &qc;
                let remove = match rem.get_mut(&te) {
                    Some(x) => {
                        *x -= delta;
                        x.is_zero()
                    }
                    None => {
                        rem.insert(te, -delta);
                        false
                    }
                };
                if remove {
                    rem.remove(&te);
                }
            }
            quot.push((qe, qc));
        }
        Some(BasePoly { terms: quot })
    }

    /// Normalise sign so that the leading coefficient is positive.
    pub fn normalize_sign(self) -> Self {
        if self.leading_coeff_sign_negative() {
            self.neg()
        } else {
            self
        }
    }

    /// View as a univariate polynomial in variable `v`; entry `i` is the
    /// coefficient of `v^i` (free of `v`).
    pub fn to_univariate(&self, v: usize) -> Vec<BasePoly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Exp, BigInt)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2[v] = 0;
            buckets[e[v] as usize].push((e2, c.clone()));
        }
        buckets.into_iter().map(BasePoly::from_terms).collect()
    }

    pub fn from_univariate(coeffs: &[BasePoly], v: usize) -> Self {
        let mut terms = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e2 = *e;
                e2[v] += i as u32;
                terms.push((e2, x.clone()));
            }
        }
        BasePoly::from_terms(terms)
    }

    /// Evaluate at rational values of (q, t, k).
    pub fn eval(&self, pt: &[BigRational; 3]) -> BigRational {
        let mut cache: [Vec<BigRational>; 3] = Default::default();
        for v in 0..3 {
            let d = self.degree_in(v) as usize;
            let mut pows = Vec::with_capacity(d + 1);
            pows.push(BigRational::one());
            for i in 1..=d {
                let next = &pows[i - 1] * &pt[v];
                pows.push(next);
            }
            cache[v] = pows;
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let m = &cache[0][e[0] as usize] * &cache[1][e[1] as usize] * &cache[2][e[2] as usize];
            acc += m * BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Generic substitution into any commutative ring built from integers.
    pub fn substitute<R, F>(&self, vals: &[R; 3], from_int: F) -> R
    where
        R: Clone + std::ops::Add<Output = R> + std::ops::Mul<Output = R> + Zero + One,
        F: Fn(&BigInt) -> R,
    {
        let mut cache: [Vec<R>; 3] = Default::default();
        for v in 0..3 {
            let d = self.degree_in(v) as usize;
            let mut pows = Vec::with_capacity(d + 1);
            pows.push(R::one());
            for i in 1..=d {
                let next = pows[i - 1].clone() * vals[v].clone();
                pows.push(next);
            }
            cache[v] = pows;
        }
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            let m = cache[0][e[0] as usize].clone()
                * cache[1][e[1] as usize].clone()
                * cache[2][e[2] as usize].clone();
            acc = acc + m * from_int(c);
        }
        acc
    }
}

/// Greatest common divisor in Z[q,t,k], normalised to a positive leading coefficient.
pub fn gcd(a: &BasePoly, b: &BasePoly) -> BasePoly {
    if a.is_zero() {
        return b.clone().normalize_sign();
    }
    if b.is_zero() {
        return a.clone().normalize_sign();
    }
    if a.is_one() || b.is_one() {
        return BasePoly::one();
    }
    if a == b {
        return a.clone().normalize_sign();
    }
    // split off monomial and integer contents
    let (ma, mb) = (a.monomial_content(), b.monomial_content());
    let mono = [ma[0].min(mb[0]), ma[1].min(mb[1]), ma[2].min(mb[2])];
    let (ia, ib) = (a.int_content(), b.int_content());
    let icont = ia.gcd(&ib);
    let a1 = a.div_monomial(&ma).div_int_exact(&ia);
    let b1 = b.div_monomial(&mb).div_int_exact(&ib);
    let core = gcd_primitive(&a1, &b1);
    core.mul_term(&mono, &icont).normalize_sign()
}

/// gcd of two polynomials with unit integer content and no monomial content.
fn gcd_primitive(a: &BasePoly, b: &BasePoly) -> BasePoly {
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return BasePoly::one();
    }
    if a.len() <= b.len() {
        if b.div_exact(a).is_some() {
            return a.clone().normalize_sign();
        }
    } else if a.div_exact(b).is_some() {
        return b.clone().normalize_sign();
    }
    if let Some(h) = heu_gcd(a, b) {
        return h;
    }
    let shared: Vec<usize> = (0..3).filter(|&v| a.involves(v) && b.involves(v)).collect();
    if shared.is_empty() {
        // disjoint variable sets: gcd divides the content of each w.r.t. the other's variables
        let v = (0..3).find(|&v| a.involves(v)).unwrap();
        let ca = content_in(a, v);
        return gcd(&ca, b);
    }
    for v in 0..3 {
        if a.involves(v) != b.involves(v) {
            let (x, y) = if a.involves(v) { (a, b) } else { (b, a) };
            let cx = content_in(x, v);
            return gcd(&cx, y);
        }
    }
    let v = *shared
        .iter()
        .max_by_key(|&&v| (a.degree_in(v).min(b.degree_in(v)), std::cmp::Reverse(v)))
        .unwrap();
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    let ca = list_gcd(&ua);
    let cb = list_gcd(&ub);
    let cg = gcd(&ca, &cb);
    let pa: Vec<BasePoly> = ua.iter().map(|c| c.div_exact(&ca).unwrap()).collect();
    let pb: Vec<BasePoly> = ub.iter().map(|c| c.div_exact(&cb).unwrap()).collect();
    let g = prs_gcd(pa, pb);
    let gp = BasePoly::from_univariate(&g, v);
    gp.mul(&cg).normalize_sign()
}

fn max_norm(p: &BasePoly) -> BigInt {
    p.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
}

/// p with the variable v replaced by the integer x.
fn eval_var(p: &BasePoly, v: usize, x: &BigInt) -> BasePoly {
    let coeffs = p.to_univariate(v);
    let mut acc = BasePoly::zero();
    for c in coeffs.iter().rev() {
        acc = acc.scale(x).add(c);
    }
    acc
}

/// Symmetric residue of c modulo m, in (−m/2, m/2].
fn smod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Heuristic gcd: evaluate one variable at a large integer, take the gcd of
/// the images, lift by ξ-adic expansion and accept the candidate only if it
/// divides both inputs. Inputs are primitive with no monomial content.
fn heu_gcd(a: &BasePoly, b: &BasePoly) -> Option<BasePoly> {
    let v = (0..3).rev().find(|&v| a.involves(v) || b.involves(v))?;
    let bound = max_norm(a).min(max_norm(b));
    let mut xi: BigInt = bound * 2 + 29;
    for _ in 0..6 {
        let (ea, eb) = (eval_var(a, v, &xi), eval_var(b, v, &xi));
        if !ea.is_zero() && !eb.is_zero() {
            let mut gamma = gcd(&ea, &eb);
            let mut lifted = BasePoly::zero();
            let mut i = 0u32;
            while !gamma.is_zero() {
                let digit = BasePoly::from_terms(gamma.terms.iter().map(|(e, c)| (*e, smod(c, &xi))));
                let mut e = [0u32; 3];
                e[v] = i;
                lifted = lifted.add(&digit.mul_term(&e, &BigInt::one()));
                gamma = gamma.sub(&digit).div_int_exact(&xi);
                i += 1;
            }
            if !lifted.is_zero() {
                let ic = lifted.int_content();
                let h = lifted.div_int_exact(&ic).normalize_sign();
                if a.div_exact(&h).is_some() && b.div_exact(&h).is_some() {
                    return Some(h);
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

fn content_in(p: &BasePoly, v: usize) -> BasePoly {
    list_gcd(&p.to_univariate(v))
}

fn list_gcd(cs: &[BasePoly]) -> BasePoly {
    let mut nz: Vec<&BasePoly> = cs.iter().filter(|c| !c.is_zero()).collect();
    nz.sort_by_key(|c| c.len());
    let mut g = BasePoly::zero();
    for c in nz {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn trim(p: &mut Vec<BasePoly>) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    if p.len() == 1 && p[0].is_zero() {
        p.clear();
    }
}

fn uni_deg(p: &[BasePoly]) -> usize {
    p.len().saturating_sub(1)
}

/// Pseudo-remainder of `a` by `b` over the coefficient ring.
fn prem(a: &[BasePoly], b: &[BasePoly]) -> Vec<BasePoly> {
    let mut r: Vec<BasePoly> = a.to_vec();
    trim(&mut r);
    let db = uni_deg(b);
    let lb = b.last().unwrap().clone();
    while !r.is_empty() && uni_deg(&r) >= db {
        let dr = uni_deg(&r);
        let lr = r.last().unwrap().clone();
        let shift = dr - db;
        let mut nr: Vec<BasePoly> = r.iter().map(|c| c.mul(&lb)).collect();
        for (i, bc) in b.iter().enumerate() {
            nr[i + shift] = nr[i + shift].sub(&bc.mul(&lr));
        }
        r = nr;
        trim(&mut r);
    }
    r
}

fn primitive_part(p: Vec<BasePoly>) -> Vec<BasePoly> {
    let c = list_gcd(&p);
    if c.is_one() {
        return p;
    }
    let c = if p.last().map(|x| x.leading_coeff_sign_negative()).unwrap_or(false) { c.neg() } else { c };
    p.iter().map(|x| x.div_exact(&c).unwrap()).collect()
}

fn prs_gcd(mut a: Vec<BasePoly>, mut b: Vec<BasePoly>) -> Vec<BasePoly> {
    trim(&mut a);
    trim(&mut b);
    if uni_deg(&a) < uni_deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_empty() {
            return primitive_part(a);
        }
        if uni_deg(&b) == 0 {
            return vec![BasePoly::one()];
        }
        let r = prem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { primitive_part(r) };
    }
}

pub fn lcm(a: &BasePoly, b: &BasePoly) -> BasePoly {
    if a.is_one() {
        return b.clone().normalize_sign();
    }
    if b.is_one() {
        return a.clone().normalize_sign();
    }
    let g = gcd(a, b);
    a.div_exact(&g).unwrap().mul(b).normalize_sign()
}

fn fmt_monomial(e: &Exp) -> String {
    let mut parts = Vec::new();
    for v in 0..3 {
        match e[v] {
            0 => {}
            1 => parts.push(VAR_NAMES[v].to_string()),
            n => parts.push(format!("{}^{}", VAR_NAMES[v], n)),
        }
    }
    parts.join("*")
}

/// Write a sequence of signed terms `(coeff, monomial-text)` in canonical form.
pub(crate) fn write_terms(out: &mut String, terms: &[(BigInt, String)]) {
    if terms.is_empty() {
        out.push('0');
        return;
    }
    for (i, (c, m)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(m);
        } else {
            out.push_str(&mag.to_string());
            out.push('*');
            out.push_str(m);
        }
    }
}

impl BasePoly {
    pub(crate) fn signed_terms(&self, suffix: &str) -> Vec<(BigInt, String)> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let m = fmt_monomial(e);
                let m = match (m.is_empty(), suffix.is_empty()) {
                    (true, _) => suffix.to_string(),
                    (false, true) => m,
                    (false, false) => format!("{}*{}", m, suffix),
                };
                (c.clone(), m)
            })
            .collect()
    }
}

/// The text of `p`, parenthesised unless it is a single factor.
pub(crate) fn atom(p: &BasePoly) -> String {
    let s = p.to_string();
    if s.contains(['*', ' ']) {
        format!("({})", s)
    } else {
        s
    }
}

impl fmt::Display for BasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_terms(&mut s, &self.signed_terms(""));
        f.write_str(&s)
    }
}

impl fmt::Debug for BasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> BasePoly {
        BasePoly::var(0)
    }
    fn t() -> BasePoly {
        BasePoly::var(1)
    }
    fn k() -> BasePoly {
        BasePoly::var(2)
    }
    fn c(n: i64) -> BasePoly {
        BasePoly::from_i64(n)
    }

    #[test]
    fn display_orders_terms() {
        let p = c(3).add(&q().pow(2).mul(&t())).sub(&k().scale(&BigInt::from(2)));
        assert_eq!(p.to_string(), "q^2*t - 2*k + 3");
    }

    #[test]
    fn exact_division_round_trip() {
        let a = q().add(&t()).pow(3);
        let b = q().sub(&k()).add(&c(2));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&b).unwrap(), a);
        assert!(p.div_exact(&q().add(&c(7))).is_none());
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let g = q().pow(2).add(&c(1)).mul(&t().sub(&k()));
        let a = g.mul(&q().add(&c(3)));
        let b = g.mul(&q().mul(&k()).sub(&c(2)));
        assert_eq!(gcd(&a, &b), g.normalize_sign());
    }

    #[test]
    fn gcd_with_integer_and_monomial_content() {
        let a = q().pow(3).mul(&k()).scale(&BigInt::from(6));
        let b = q().mul(&k().pow(2)).scale(&BigInt::from(4)).add(&q().scale(&BigInt::from(8)));
        assert_eq!(gcd(&a, &b), q().scale(&BigInt::from(2)));
    }

    #[test]
    fn gcd_coprime_is_one() {
        let a = q().pow(2).add(&c(1));
        let b = q().add(&c(1));
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn univariate_round_trip() {
        let p = q().pow(3).mul(&t()).add(&k().mul(&q())).sub(&c(5));
        for v in 0..3 {
            assert_eq!(BasePoly::from_univariate(&p.to_univariate(v), v), p);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = BasePoly> {
            prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -5i64..=5), 1..5).prop_map(|ts| {
                BasePoly::from_terms(ts.into_iter().map(|((a, b, c), n)| ([a, b, c], BigInt::from(n))))
            })
        }

        fn primitive(p: &BasePoly) -> BasePoly {
            p.div_monomial(&p.monomial_content()).div_int_exact(&p.int_content())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(96))]

            #[test]
            fn heuristic_gcd_is_a_common_divisor_containing_the_planted_factor(a in poly(), b in poly(), h in poly()) {
                prop_assume!(!a.is_zero() && !b.is_zero() && !h.is_zero());
                let (ah, bh) = (primitive(&a.mul(&h)), primitive(&b.mul(&h)));
                prop_assume!(ah.as_constant().is_none() && bh.as_constant().is_none());
                if let Some(g) = heu_gcd(&ah, &bh) {
                    prop_assert!(ah.div_exact(&g).is_some());
                    prop_assert!(bh.div_exact(&g).is_some());
                    prop_assert!(g.div_exact(&primitive(&h)).is_some());
                    prop_assert_eq!(g.normalize_sign(), gcd_primitive(&ah, &bh).normalize_sign());
                }
            }

            #[test]
            fn gcd_of_coprime_cofactors_is_one(a in poly(), b in poly()) {
                prop_assume!(!a.is_zero() && !b.is_zero());
                let g = gcd(&a, &b);
                let (ca, cb) = (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap());
                prop_assert!(gcd(&ca, &cb).is_one());
            }
        }
    }
}
