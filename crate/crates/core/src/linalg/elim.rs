use super::{Field, LinalgError, Mat, Ring};

/// A connected block of the sparsity pattern: the rows and columns it couples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Split the matrix into independent blocks (connected components of the
/// bipartite row/column graph of nonzero entries), ordered by first row/column.
pub fn components<T: Ring>(m: &Mat<T>) -> Vec<Component> {
    let (r, c) = (m.rows(), m.cols());
    let mut parent: Vec<usize> = (0..r + c).collect();
    for i in 0..r {
        for j in 0..c {
            if !m.get(i, j).is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, r + j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut order: Vec<usize> = Vec::new();
    let mut groups: std::collections::HashMap<usize, Component> = Default::default();
    for x in 0..r + c {
        let root = find(&mut parent, x);
        let g = groups.entry(root).or_insert_with(|| {
            order.push(root);
            Component { rows: Vec::new(), cols: Vec::new() }
        });
        if x < r {
            g.rows.push(x);
        } else {
            g.cols.push(x - r);
        }
    }
    order.into_iter().map(|k| groups.remove(&k).unwrap()).collect()
}

/// Fraction-free Gaussian elimination; every division is exact.
pub(crate) fn bareiss<R: Ring>(m: &Mat<R>) -> R {
    let n = m.rows();
    assert!(m.is_square(), "determinant of a non-square matrix");
    if n == 0 {
        return R::one();
    }
    let mut a: Vec<Vec<R>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign = false;
    let mut prev = R::one();
    for kk in 0..n {
        let Some(p) = (kk..n).find(|&i| !a[i][kk].is_zero()) else {
            return R::zero();
        };
        if p != kk {
            a.swap(p, kk);
            sign = !sign;
        }
        let pivot = a[kk][kk].clone();
        let (top, bottom) = a.split_at_mut(kk + 1);
        let pivot_row = &top[kk];
        for row in bottom.iter_mut() {
            let aik = row[kk].clone();
            for (x, pj) in row.iter_mut().zip(pivot_row).skip(kk + 1) {
                let lhs = if x.is_zero() { R::zero() } else { pivot.clone() * x.clone() };
                let rhs = if aik.is_zero() || pj.is_zero() { R::zero() } else { aik.clone() * pj.clone() };
                let num = lhs - rhs;
                *x = if num.is_zero() {
                    R::zero()
                } else {
                    num.div_exact(&prev).expect("Bareiss division must be exact")
                };
            }
            row[kk] = R::zero();
        }
        prev = pivot;
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

fn perm_sign(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut odd = false;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

/// Whether listing rows and columns component by component changes the
/// determinant's sign.
pub fn components_flip_sign(comps: &[Component]) -> bool {
    let rows: Vec<usize> = comps.iter().flat_map(|c| c.rows.iter().copied()).collect();
    let cols: Vec<usize> = comps.iter().flat_map(|c| c.cols.iter().copied()).collect();
    perm_sign(&rows) != perm_sign(&cols)
}

/// Determinant, computed block by block over the sparsity components.
pub fn det<T: Field>(m: &Mat<T>) -> T {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let comps = components(m);
    let mut rows = Vec::with_capacity(m.rows());
    let mut cols = Vec::with_capacity(m.cols());
    let mut acc = T::one();
    for c in &comps {
        if c.rows.len() != c.cols.len() {
            return T::zero();
        }
        rows.extend_from_slice(&c.rows);
        cols.extend_from_slice(&c.cols);
        acc = acc * T::block_det(&m.submatrix(&c.rows, &c.cols));
        if acc.is_zero() {
            return acc;
        }
    }
    if perm_sign(&rows) != perm_sign(&cols) {
        -acc
    } else {
        acc
    }
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref<T: Field>(a: &mut [Vec<T>], ncols: usize) -> Vec<usize> {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for j in c..a[r].len() {
            if !a[r][j].is_zero() {
                a[r][j] = a[r][j].clone() * inv.clone();
            }
        }
        for i in 0..nrows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..a[i].len() {
                if !a[r][j].is_zero() {
                    a[i][j] = a[i][j].clone() - f.clone() * a[r][j].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Kernel of one block by reduced row echelon form over the field.
pub(crate) fn rref_kernel<T: Field>(m: &Mat<T>) -> Vec<Vec<T>> {
    let n = m.cols();
    let mut a: Vec<Vec<T>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let pivots = rref(&mut a, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); n];
            v[f] = T::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Solve a square block for several right-hand sides by reduced row echelon
/// form; on singularity returns the first non-pivot column.
pub(crate) fn rref_solve<T: Field>(m: &Mat<T>, rhs: &[Vec<T>]) -> Result<Vec<Vec<T>>, usize> {
    let n = m.cols();
    let mut a: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend(rhs.iter().map(|b| b[i].clone()));
            row
        })
        .collect();
    let pivots = rref(&mut a, n);
    if pivots.len() < n {
        return Err((0..n).find(|x| !pivots.contains(x)).unwrap());
    }
    Ok((0..rhs.len()).map(|k| (0..n).map(|r| a[r][n + k].clone()).collect()).collect())
}

/// Fraction-free Gauss-Jordan elimination over an integral domain. On return
/// every pivot row r has a nonzero entry at `pivots[r]`, all other rows vanish
/// in that column, and rows past the rank are zero on the first `ncols`
/// columns. Every division is exact.
pub(crate) fn ff_gauss_jordan<R: Ring>(a: &mut [Vec<R>], ncols: usize) -> Vec<usize> {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut prev = R::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let pivot = a[r][c].clone();
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            for (j, x) in row.iter_mut().enumerate() {
                if j == c {
                    continue;
                }
                let lhs = if x.is_zero() { R::zero() } else { pivot.clone() * x.clone() };
                let rhs = if f.is_zero() || pivot_row[j].is_zero() {
                    R::zero()
                } else {
                    f.clone() * pivot_row[j].clone()
                };
                let num = lhs - rhs;
                *x = if num.is_zero() {
                    R::zero()
                } else {
                    num.div_exact(&prev).expect("fraction-free division must be exact")
                };
            }
            row[c] = R::zero();
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right null space.
pub fn kernel<T: Field>(m: &Mat<T>) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    for c in components(m) {
        if c.cols.is_empty() {
            continue;
        }
        let sub = m.submatrix(&c.rows, &c.cols);
        for v in T::block_kernel(&sub) {
            let mut full = vec![T::zero(); m.cols()];
            for (x, &j) in v.into_iter().zip(&c.cols) {
                full[j] = x;
            }
            out.push(full);
        }
    }
    out
}

pub fn rank<T: Field>(m: &Mat<T>) -> usize {
    m.cols() - kernel(m).len()
}

/// The unique x with m·x = rhs.
pub fn solve<T: Field>(m: &Mat<T>, rhs: &[T]) -> Result<Vec<T>, LinalgError> {
    let sol = solve_many(m, &[rhs.to_vec()])?;
    Ok(sol.into_iter().next().unwrap())
}

fn solve_many<T: Field>(m: &Mat<T>, rhs: &[Vec<T>]) -> Result<Vec<Vec<T>>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::Dimension(format!("solve needs a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    if rhs.iter().any(|b| b.len() != m.rows()) {
        return Err(LinalgError::Dimension("right-hand side length".into()));
    }
    let mut out = vec![vec![T::zero(); m.cols()]; rhs.len()];
    for c in components(m) {
        if c.rows.len() != c.cols.len() {
            let column = c.cols.first().copied().unwrap_or(0);
            return Err(LinalgError::SingularMatrix { column });
        }
        let sub = m.submatrix(&c.rows, &c.cols);
        let sub_rhs: Vec<Vec<T>> = rhs.iter().map(|b| c.rows.iter().map(|&i| b[i].clone()).collect()).collect();
        let sol = T::block_solve(&sub, &sub_rhs).map_err(|k| LinalgError::SingularMatrix { column: c.cols[k] })?;
        for (k, x) in sol.into_iter().enumerate() {
            for (v, &j) in x.into_iter().zip(&c.cols) {
                out[k][j] = v;
            }
        }
    }
    Ok(out)
}

pub fn inverse<T: Field>(m: &Mat<T>) -> Result<Mat<T>, LinalgError> {
    let n = m.rows();
    let id: Vec<Vec<T>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let cols = solve_many(m, &id)?;
    Ok(Mat::from_columns(n, &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn block_det_with_permutation() {
        // [[0,2,0],[3,0,0],[0,0,5]] has det -30
        let m = Mat::from_vec(3, 3, vec![r(0), r(2), r(0), r(3), r(0), r(0), r(0), r(0), r(5)]);
        assert_eq!(det(&m), r(-30));
        assert_eq!(components(&m).len(), 3);
    }

    #[test]
    fn bareiss_integer() {
        let m = Mat::from_vec(3, 3, [2, -1, 0, -1, 2, -1, 0, -1, 2].iter().map(|&x| num_bigint::BigInt::from(x)).collect());
        assert_eq!(bareiss(&m), num_bigint::BigInt::from(4));
    }

    #[test]
    fn kernel_of_zero() {
        let m: Mat<BigRational> = Mat::zeros(2, 2);
        assert_eq!(kernel(&m).len(), 2);
        let i: Mat<BigRational> = Mat::identity(4);
        assert!(kernel(&i).is_empty());
    }

    #[test]
    fn singular_solve_reports_column() {
        let m = Mat::from_vec(2, 2, vec![r(1), r(2), r(2), r(4)]);
        assert!(matches!(solve(&m, &[r(1), r(1)]), Err(LinalgError::SingularMatrix { .. })));
    }

    mod props {
        use super::*;
        use num_bigint::BigInt;
        use proptest::prelude::*;

        fn rows() -> impl Strategy<Value = Vec<Vec<i64>>> {
            (1usize..6, 1usize..7).prop_flat_map(|(m, n)| {
                prop::collection::vec(prop::collection::vec(prop_oneof![2 => Just(0i64), 3 => -4i64..=4], n), m)
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(128))]

            #[test]
            fn fraction_free_elimination_matches_rref(m in rows()) {
                let n = m[0].len();
                let mut ints: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
                let mut rats: Vec<Vec<BigRational>> =
                    m.iter().map(|row| row.iter().map(|&x| r(x)).collect()).collect();
                let ff = ff_gauss_jordan(&mut ints, n);
                let exact = rref(&mut rats, n);
                prop_assert_eq!(&ff, &exact);
                for (i, &p) in ff.iter().enumerate() {
                    let pivot = BigRational::from_integer(ints[i][p].clone());
                    for j in 0..n {
                        prop_assert_eq!(BigRational::from_integer(ints[i][j].clone()) / &pivot, rats[i][j].clone());
                    }
                }
            }

            #[test]
            fn bareiss_matches_rational_elimination(m in rows()) {
                let n = m.len().min(m[0].len());
                let sq = Mat::from_fn(n, n, |i, j| BigInt::from(m[i][j]));
                let rat = sq.map(|x| BigRational::from_integer(x.clone()));
                prop_assert_eq!(BigRational::from_integer(bareiss(&sq)), det(&rat));
            }
        }
    }
}
