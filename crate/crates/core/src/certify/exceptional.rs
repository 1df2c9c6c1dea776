//! Exceptional q: real q ∈ (−1,1)\{0} where det(psym23) vanishes at fixed
//! (t₀, k₀), found by interpolating the determinant at Pythagorean points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::upoly::{certifies_single_root, count_roots, isolate_roots, RootInterval, UPoly};
use super::CertifyError;
use crate::field::{FieldElem, Point, SPoly};
use crate::linalg::{components, components_flip_sign, det, Mat};
use crate::SymMat;

/// One isolated exceptional root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalRoot {
    /// Square-free rational polynomial vanishing at the root.
    pub factor: UPoly,
    pub interval: RootInterval,
}

/// The exceptional set at one specialisation of (t, k).
#[derive(Clone, Debug)]
pub struct ExceptionalSet {
    pub t0: BigRational,
    pub k0: BigRational,
    /// det = (a + b·s) / den in lowest terms, polynomials in q.
    pub a: UPoly,
    pub b: UPoly,
    pub den: UPoly,
    /// Square-free polynomial whose roots contain every exceptional q.
    pub candidate: UPoly,
    pub roots: Vec<ExceptionalRoot>,
    pub control_ok: bool,
    pub points_used: usize,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1_000_000))
}

fn octic() -> UPoly {
    UPoly::from_i64s(&[-1, 0, 0, 0, 1, 0, 1, 0, 1])
}

/// (a + b·s)(c + d·s) with s² = 1 + q².
fn mul_pair(x: &(UPoly, UPoly), y: &(UPoly, UPoly)) -> (UPoly, UPoly) {
    let r = UPoly::from_i64s(&[1, 0, 1]);
    (x.0.mul(&y.0).add(&r.mul(&x.1.mul(&y.1))), x.0.mul(&y.1).add(&x.1.mul(&y.0)))
}

fn upoly_of(p: &crate::field::BasePoly) -> Result<UPoly, CertifyError> {
    UPoly::from_base(p).ok_or_else(|| CertifyError::Data(format!("{} still depends on t or k", p)))
}

/// Exact integer BasePoly of a UPoly whose coefficients are integers.
fn base_exact(p: &UPoly) -> crate::field::BasePoly {
    crate::field::BasePoly::from_terms(
        p.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| ([i as u32, 0, 0], x.to_integer())),
    )
}

fn pair_value(a: &UPoly, b: &UPoly, den: &UPoly, pt: &Point) -> Option<BigRational> {
    let d = den.eval(&pt.q);
    if d.is_zero() {
        return None;
    }
    Some((a.eval(&pt.q) + b.eval(&pt.q) * &pt.s) / d)
}

/// Pythagorean points with u = 2, 3, …, all with distinct q > 0.
fn interpolation_point(i: usize, t0: &BigRational, k0: &BigRational) -> Point {
    Point::from_u(&rat(i as i64 + 2), t0.clone(), k0.clone())
}

fn control_point(t0: &BigRational, k0: &BigRational) -> Point {
    Point::from_u(&BigRational::new(BigInt::from(7), BigInt::from(3)), t0.clone(), k0.clone())
}

/// Interpolate det of a cleared square block as a + b·s.
fn interpolate_block(block: &Mat<SPoly>, t0: &BigRational, k0: &BigRational) -> ((UPoly, UPoly), usize) {
    let n = block.rows();
    let deg: usize = (0..n)
        .map(|i| block.row(i).iter().map(|x| x.q_degree() as usize).max().unwrap_or(0))
        .sum();
    let npts = deg + 1;
    let mut qs = Vec::with_capacity(npts);
    let mut av = Vec::with_capacity(npts);
    let mut bv = Vec::with_capacity(npts);
    for i in 0..npts {
        let pt = interpolation_point(i, t0, k0);
        let plus = det(&block.map(|x| x.eval_at(&pt)));
        let minus = det(&block.map(|x| x.eval_at(&pt.conjugate())));
        let two = rat(2);
        av.push((&plus + &minus) / &two);
        bv.push((&plus - &minus) / (&two * &pt.s));
        qs.push(pt.q);
    }
    ((UPoly::interpolate(&qs, &av), UPoly::interpolate(&qs, &bv)), npts)
}

/// Clear rows of the specialised matrix and interpolate its determinant.
fn interpolate_det(
    spec: &SymMat,
    t0: &BigRational,
    k0: &BigRational,
) -> Result<(UPoly, UPoly, UPoly, usize), CertifyError> {
    let n = spec.rows();
    let mut den = UPoly::from_i64s(&[1]);
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        let (m, row) = SPoly::clear_row(spec.row(i))?;
        den = den.mul(&upoly_of(&m)?);
        data.extend(row);
    }
    let cleared = Mat::from_vec(n, n, data);
    let mut acc = (UPoly::from_i64s(&[1]), UPoly::zero());
    let mut used = 0;
    let comps = components(&cleared);
    for c in &comps {
        if c.rows.len() != c.cols.len() {
            return Ok((UPoly::zero(), UPoly::zero(), den, used));
        }
        let block = cleared.submatrix(&c.rows, &c.cols);
        let (pair, npts) = interpolate_block(&block, t0, k0);
        used += npts;
        acc = mul_pair(&acc, &pair);
    }
    if components_flip_sign(&comps) {
        acc = (acc.0.neg(), acc.1.neg());
    }
    Ok((acc.0, acc.1, den, used))
}

/// Scale a, b, den to integer coefficients and reduce to lowest terms.
fn reduce(a: &UPoly, b: &UPoly, den: &UPoly) -> Result<(UPoly, UPoly, UPoly), CertifyError> {
    let l = a
        .coeffs()
        .iter()
        .chain(b.coeffs())
        .chain(den.coeffs())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let l = BigRational::from_integer(l);
    let e = FieldElem::from_parts(base_exact(&a.scale(&l)), base_exact(&b.scale(&l)), base_exact(&den.scale(&l)))?;
    let (p, q, d) = e.common_form();
    Ok((upoly_of(&p)?, upoly_of(&q)?, upoly_of(&d)?))
}

fn sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Shrink iv around its root until none of `others` has a root in it.
fn separate(iv: &RootInterval, p: &UPoly, others: &[&UPoly]) -> RootInterval {
    let seq = p.sturm();
    let oseqs: Vec<Vec<UPoly>> = others.iter().filter(|o| o.degree() > 0).map(|o| o.square_free().sturm()).collect();
    let mut cur = iv.clone();
    loop {
        let clear = oseqs.iter().all(|s| {
            count_roots(s, &cur.lo, &cur.hi) == 0 && !s[0].eval(&cur.lo).is_zero() && !s[0].eval(&cur.hi).is_zero()
        });
        if clear {
            return cur;
        }
        let mid = (&cur.lo + &cur.hi) / rat(2);
        if p.eval(&mid).is_zero() {
            let eps = (&cur.hi - &cur.lo) / rat(4);
            cur = RootInterval { lo: &mid - &eps, hi: &mid + &eps };
        } else if count_roots(&seq, &cur.lo, &mid) == 1 {
            cur.hi = mid;
        } else {
            cur.lo = mid;
        }
    }
}

/// Roots in (−1, 0) ∪ (0, 1) of a square-free polynomial.
fn domain_roots(p: &UPoly) -> Vec<RootInterval> {
    let w = width();
    let mut out = isolate_roots(p, &rat(-1), &rat(0), &w);
    out.extend(isolate_roots(p, &rat(0), &rat(1), &w));
    out
}

/// Exceptional q for det(psym23) at t = t₀, k = k₀. When `symbolic` is
/// given, it is compared with the interpolated determinant at a control point.
pub fn exceptional_q(
    psym23: &SymMat,
    t0: &BigRational,
    k0: &BigRational,
    symbolic: Option<&FieldElem>,
) -> Result<ExceptionalSet, CertifyError> {
    if t0.is_zero() || k0.is_zero() {
        return Err(CertifyError::Data("t and k must be nonzero".into()));
    }
    let spec = psym23.try_map(|x| x.specialize_tk(t0, k0))?;
    let (a, b, den, points_used) = interpolate_det(&spec, t0, k0)?;
    let ctrl = control_point(t0, k0);
    let direct = det(&spec.eval_at(&ctrl)?);
    let interpolated = pair_value(&a, &b, &den, &ctrl);
    let mut control_ok = interpolated.as_ref() == Some(&direct);
    if let Some(sym) = symbolic {
        let sv = sym.specialize_tk(t0, k0)?.eval_at(&ctrl)?;
        control_ok &= interpolated.as_ref() == Some(&sv);
    }
    if !control_ok {
        return Err(CertifyError::InterpolationInconsistent(format!(
            "q = {}, t = {}, k = {}",
            ctrl.q, t0, k0
        )));
    }
    if a.is_zero() && b.is_zero() {
        return Err(CertifyError::Data("psym23 is singular at this specialisation".into()));
    }
    let (a, b, den) = reduce(&a, &b, &den)?;

    // Common roots of a and b are roots on both branches of s.
    let g = a.gcd(&b);
    let a1 = a.div_rem(&g).0;
    let b1 = b.div_rem(&g).0;
    let r = UPoly::from_i64s(&[1, 0, 1]);
    let norm = a1.mul(&a1).sub(&r.mul(&b1.mul(&b1)));
    let norm_sf = if norm.degree() > 0 { norm.square_free() } else { norm.clone() };
    let g_sf = if g.degree() > 0 { g.square_free() } else { g.clone() };

    let mut roots = Vec::new();
    for iv in domain_roots(&g_sf) {
        let iv = separate(&iv, &g_sf, &[&den]);
        roots.push(ExceptionalRoot { factor: g_sf.primitive(), interval: iv });
    }
    for iv in domain_roots(&norm_sf) {
        let iv = separate(&iv, &norm_sf, &[&a1, &b1, &den]);
        let mid = (&iv.lo + &iv.hi) / rat(2);
        // a₁ + b₁·s = 0 with s > 0 needs opposite signs of a₁ and b₁.
        if sign(&a1.eval(&mid)) * sign(&b1.eval(&mid)) < 0 {
            roots.push(ExceptionalRoot { factor: norm_sf.primitive(), interval: iv });
        }
    }
    roots.sort_by(|x, y| x.interval.lo.cmp(&y.interval.lo));
    let candidate = g_sf.mul(&norm_sf).primitive();
    Ok(ExceptionalSet { t0: t0.clone(), k0: k0.clone(), a, b, den, candidate, roots, control_ok, points_used })
}

impl ExceptionalSet {
    /// Every interval holds exactly one simple root of its factor, has width
    /// at most 10⁻⁶ and lies in (−1,1)\{0}.
    pub fn intervals_certified(&self) -> bool {
        let w = width();
        self.roots.iter().all(|r| {
            let iv = &r.interval;
            iv.width() <= w
                && iv.lo >= rat(-1)
                && iv.hi <= rat(1)
                && !(iv.lo < rat(0) && iv.hi > rat(0))
                && certifies_single_root(&r.factor, iv)
        })
    }

    /// Whether a reported root is a root of q⁸+q⁶+q⁴−1 inside (0.82, 0.83).
    pub fn has_octic_root(&self) -> bool {
        let lo = BigRational::new(BigInt::from(82), BigInt::from(100));
        let hi = BigRational::new(BigInt::from(83), BigInt::from(100));
        let o = octic();
        self.roots.iter().any(|r| {
            let iv = &r.interval;
            iv.lo >= lo && iv.hi <= hi && octic().gcd(&r.factor).degree() > 0 && certifies_single_root(&o, iv)
        })
    }
}

/// Whether the root sets agree: same count and pairwise overlapping intervals.
pub fn root_sets_agree(sets: &[ExceptionalSet]) -> bool {
    sets.windows(2).all(|w| {
        w[0].roots.len() == w[1].roots.len()
            && w[0].roots.iter().zip(&w[1].roots).all(|(x, y)| x.interval.overlaps(&y.interval))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(entries: &[&str]) -> SymMat {
        let n = entries.len();
        Mat::from_fn(n, n, |i, j| if i == j { entries[i].parse().unwrap() } else { FieldElem::zero() })
    }

    #[test]
    fn finds_octic_root_of_a_planted_determinant() {
        let m = diag(&["q^8 + q^6 + q^4 - 1", "1/(q^2 + 1)", "s*k"]);
        let d = det(&m);
        let set = exceptional_q(&m, &rat(2), &rat(3), Some(&d)).unwrap();
        assert!(set.control_ok);
        assert_eq!(set.roots.len(), 2);
        assert!(set.has_octic_root());
        assert!(set.intervals_certified());
    }

    #[test]
    fn branch_filter_keeps_only_genuine_zeros() {
        // s − 2q vanishes where √(1+q²) = 2q, i.e. q = 1/√3 only.
        let m = diag(&["s - 2*q", "q"]);
        let set = exceptional_q(&m, &rat(2), &rat(3), None).unwrap();
        assert_eq!(set.roots.len(), 1);
        let iv = &set.roots[0].interval;
        assert!(iv.lo > rat(0));
        let three = rat(3);
        assert!(&iv.lo * &iv.lo * &three < rat(1) && &iv.hi * &iv.hi * &three > rat(1));
    }

    #[test]
    fn root_free_determinant_has_empty_set() {
        let m = diag(&["q^4 + 1", "(q^2 + 1)^-3"]);
        let set = exceptional_q(&m, &rat(5), &rat(7), None).unwrap();
        assert!(set.roots.is_empty());
        assert!(!set.has_octic_root());
        assert!(set.intervals_certified());
    }

    #[test]
    fn inconsistent_symbolic_is_rejected() {
        let m = diag(&["q^2 + 2"]);
        let wrong: FieldElem = "q^2 + 3".parse().unwrap();
        assert!(matches!(
            exceptional_q(&m, &rat(2), &rat(3), Some(&wrong)),
            Err(CertifyError::InterpolationInconsistent(_))
        ));
    }
}
