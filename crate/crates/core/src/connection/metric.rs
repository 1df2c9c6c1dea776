//! σ-invariant nondegenerate metrics on the invariant forms.

use num_traits::Zero;

use super::ConnectionError;
use crate::calculus::{screening_point, BraidingOperator};
use crate::field::FieldElem;
use crate::linalg::{det, inverse, kernel, LinalgError, Mat};
use crate::SymMat;

/// G[i][j] = g(ω_i⊗ω_j).
#[derive(Clone, Debug, PartialEq)]
pub struct Metric {
    pub g: SymMat,
}

impl Metric {
    pub fn from_grid(grid: Vec<Vec<FieldElem>>) -> Result<Self, ConnectionError> {
        if grid.len() != 4 || grid.iter().any(|r| r.len() != 4) {
            return Err(ConnectionError::MetricShape(format!("got {} rows", grid.len())));
        }
        let labels: Vec<String> = (1..=4).map(|i| format!("w{}", i)).collect();
        let g = Mat::from_fn(4, 4, |i, j| grid[i][j].clone()).with_labels(labels.clone(), labels);
        Ok(Metric { g })
    }

    fn from_vec16(v: &[FieldElem]) -> Self {
        Self::from_grid((0..4).map(|i| v[i * 4..i * 4 + 4].to_vec()).collect()).expect("16 entries")
    }

    pub fn vec16(&self) -> Vec<FieldElem> {
        self.g.data().to_vec()
    }

    pub fn det(&self) -> FieldElem {
        det(&self.g)
    }

    pub fn check_nondegenerate(&self) -> Result<(), ConnectionError> {
        if self.det().is_zero() {
            Err(ConnectionError::SingularMetric)
        } else {
            Ok(())
        }
    }

    /// σᵀ·vec(G) = vec(G).
    pub fn check_invariant(&self, b: &BraidingOperator) -> Result<(), ConnectionError> {
        let v = self.vec16();
        let image = b.sigma.transpose().mul_vec(&v)?;
        match image.iter().zip(&v).position(|(x, y)| x != y) {
            None => Ok(()),
            Some(i) => Err(ConnectionError::NotInvariant(crate::calculus::pair_label(i))),
        }
    }

    pub fn inverse(&self) -> Result<SymMat, ConnectionError> {
        inverse(&self.g).map_err(|e| match e {
            LinalgError::SingularMatrix { .. } => ConnectionError::SingularMetric,
            other => other.into(),
        })
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..4).map(|i| self.g.row(i).iter().map(|x| x.to_string()).collect()).collect()
    }
}

/// A basis of the solutions of σᵀ·x = x, reshaped to 4×4.
pub fn metric_basis(b: &BraidingOperator) -> Vec<Metric> {
    let shifted = b.sigma.transpose().sub(&Mat::identity(16)).expect("square");
    kernel(&shifted).iter().map(|v| Metric::from_vec16(v)).collect()
}

fn combine(basis: &[Metric], coeffs: &[(usize, i64)]) -> Metric {
    let mut v = vec![FieldElem::zero(); 16];
    for &(idx, c) in coeffs {
        for (e, x) in v.iter_mut().zip(basis[idx].vec16()) {
            *e = e.add_ref(&x.scale_int(c));
        }
    }
    Metric::from_vec16(&v)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// First nondegenerate combination of the metric basis, searching by support
/// size, then coefficient size, then lexicographically.
pub fn example_metric(b: &BraidingOperator) -> Result<Metric, ConnectionError> {
    let basis = metric_basis(b);
    let pt = screening_point();
    for size in 1..=basis.len() {
        for bound in 1..=2i64 {
            for subset in subsets(basis.len(), size) {
                let patterns = coefficient_patterns(size, bound);
                for pat in patterns {
                    let coeffs: Vec<(usize, i64)> = subset.iter().copied().zip(pat).collect();
                    let m = combine(&basis, &coeffs);
                    let Ok(num) = m.g.eval_at(&pt) else { continue };
                    if !det(&num).is_zero() {
                        return Ok(m);
                    }
                }
            }
        }
    }
    Err(ConnectionError::SingularMetric)
}

/// Nonzero integer vectors with entries in [−bound, bound], at least one
/// entry of size `bound`, first entry positive.
fn coefficient_patterns(len: usize, bound: i64) -> Vec<Vec<i64>> {
    let vals: Vec<i64> = (1..=bound).flat_map(|v| [v, -v]).collect();
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for pos in 0..len {
        let mut next = Vec::new();
        for p in &out {
            for &v in &vals {
                if pos == 0 && v < 0 {
                    continue;
                }
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        out = next;
    }
    out.retain(|p| p.iter().any(|v| v.abs() == bound));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn patterns_are_ordered_and_bounded() {
        assert_eq!(coefficient_patterns(1, 1), vec![vec![1]]);
        assert_eq!(coefficient_patterns(2, 1), vec![vec![1, 1], vec![1, -1]]);
        assert!(coefficient_patterns(2, 2).iter().all(|p| p.contains(&2) || p.contains(&-2)));
    }

    #[test]
    fn identity_metric_is_nondegenerate() {
        let id = Metric { g: Mat::identity(4) };
        assert!(id.check_nondegenerate().is_ok());
        let zero = Metric { g: Mat::zeros(4, 4) };
        assert_eq!(zero.check_nondegenerate(), Err(ConnectionError::SingularMetric));
    }
}
