//! Exact integer and rational linear algebra, plus a cyclic Jacobi
//! eigensolver for the two floating-point spectral methods.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::MultiGraph;

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidParams("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&x| x.into()).collect(),
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        self.data[i * self.cols + j] = value.into();
    }

    /// The matrix with row `r` and column `c` deleted.
    pub fn minor(&self, r: usize, c: usize) -> IntMatrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination. Every division
/// in the elimination is exact. The 0x0 determinant is 1.
pub fn determinant_exact(m: &IntMatrix) -> Result<BigInt> {
    if m.rows != m.cols {
        return Err(Error::NotSquare(m.rows, m.cols));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| m.data[i * n..(i + 1) * n].to_vec())
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            for j in k + 1..n {
                let t = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                row[j] = t / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Solves `A x = b` exactly by Gauss-Jordan elimination over the rationals.
pub fn solve_exact(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<Vec<BigRational>> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::NotSquare(n, a.first().map_or(0, Vec::len)));
    }
    if b.len() != n {
        return Err(Error::InvalidParams(format!(
            "right-hand side has length {}, expected {n}",
            b.len()
        )));
    }
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for v in aug[col].iter_mut().skip(col) {
            *v *= &inv;
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *v -= &factor * p;
            }
        }
    }
    Ok(aug.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Number of spanning trees, via any cofactor of the Laplacian. Zero for a
/// disconnected multigraph, one for a single vertex.
pub fn tau(mg: &MultiGraph) -> Result<BigInt> {
    if mg.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    determinant_exact(&mg.reduced_laplacian(0))
}

/// Eigenpairs of a real symmetric matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` is the unit eigenvector for `eigenvalues[k]`.
    pub eigenvectors: Vec<Vec<f64>>,
}

const SYMMETRY_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Full symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Eigenvectors are normalised so their first non-negligible component is
/// positive.
pub fn eigh(m: &[Vec<f64>]) -> Result<SpectralDecomposition> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::NotSquare(n, m.first().map_or(0, Vec::len)));
    }
    for i in 0..n {
        for j in i + 1..n {
            if (m[i][j] - m[j][i]).abs() > SYMMETRY_TOL {
                return Err(Error::NotSymmetric(i, j));
            }
        }
    }
    let mut a: Vec<Vec<f64>> = m.to_vec();
    // v[i][k]: component i of eigenvector k
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    let scale: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    let eigenvalues = order.iter().map(|&k| a[k][k]).collect();
    let eigenvectors = order
        .iter()
        .map(|&k| {
            let mut vec: Vec<f64> = (0..n).map(|i| v[i][k]).collect();
            if let Some(first) = vec.iter().copied().find(|x| x.abs() > 1e-12) {
                if first < 0.0 {
                    vec.iter_mut().for_each(|x| *x = -*x);
                }
            }
            vec
        })
        .collect();
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut [Vec<f64>], v: &mut [Vec<f64>], p: usize, q: usize) {
    let n = a.len();
    let apq = a[p][q];
    let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    a[p][p] -= t * apq;
    a[q][q] += t * apq;
    a[p][q] = 0.0;
    a[q][p] = 0.0;
    for r in 0..n {
        if r != p && r != q {
            let arp = a[r][p];
            let arq = a[r][q];
            a[r][p] = c * arp - s * arq;
            a[p][r] = a[r][p];
            a[r][q] = s * arp + c * arq;
            a[q][r] = a[r][q];
        }
    }
    for row in v.iter_mut() {
        let vp = row[p];
        let vq = row[q];
        row[p] = c * vp - s * vq;
        row[q] = s * vp + c * vq;
    }
}

/// Converts an integer to a rational.
pub fn ratio(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Rational rendered as `num/den` (denominator always present).
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Nearest `f64` to a rational.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Laplace expansion along the first row; exponential, test-only.
    fn cofactor_det(m: &[Vec<i64>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for j in 0..n {
            let sub: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let term = BigInt::from(m[0][j]) * cofactor_det(&sub);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn empty_determinant_is_one() {
        assert_eq!(determinant_exact(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::one());
    }

    #[test]
    fn two_by_two_determinant() {
        let m = IntMatrix::from_rows(&[vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(determinant_exact(&m).unwrap(), BigInt::from(3));
        assert_eq!(cofactor_det(&[vec![2, -1], vec![-1, 2]]), BigInt::from(3));
    }

    #[test]
    fn non_square_is_rejected() {
        let m = IntMatrix::zeros(2, 3);
        assert_eq!(determinant_exact(&m), Err(Error::NotSquare(2, 3)));
    }

    #[test]
    fn zero_leading_pivot_needs_row_swap() {
        let rows = vec![vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]];
        let m = IntMatrix::from_rows(&rows).unwrap();
        assert_eq!(determinant_exact(&m).unwrap(), cofactor_det(&rows));
    }

    #[test]
    fn reduced_laplacian_of_k4() {
        let edges: Vec<_> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        let g = Graph::from_edge_list(&edges, 4).unwrap();
        let det = determinant_exact(&g.to_multigraph().reduced_laplacian(0)).unwrap();
        assert_eq!(det, BigInt::from(16));
    }

    #[test]
    fn solve_identity_and_two_by_two() {
        let id = vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]];
        let b = vec![q(3, 2), q(-7, 5)];
        assert_eq!(solve_exact(&id, &b).unwrap(), b);

        let a = vec![vec![q(2, 1), q(-1, 1)], vec![q(-1, 1), q(2, 1)]];
        let x = solve_exact(&a, &[q(1, 1), q(1, 1)]).unwrap();
        assert_eq!(x, vec![q(1, 1), q(1, 1)]);
    }

    #[test]
    fn singular_solve() {
        let a = vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]];
        assert_eq!(solve_exact(&a, &[q(1, 1), q(0, 1)]), Err(Error::SingularMatrix));
    }

    #[test]
    fn tau_of_small_multigraphs() {
        let mut double = MultiGraph::new(2);
        double.add_edges(0, 1, 2);
        assert_eq!(tau(&double).unwrap(), BigInt::from(2));
        assert_eq!(tau(&MultiGraph::new(1)).unwrap(), BigInt::one());
        assert_eq!(tau(&MultiGraph::new(3)).unwrap(), BigInt::zero());
        assert_eq!(tau(&MultiGraph::new(0)), Err(Error::EmptyGraph));
    }

    #[test]
    fn eigh_of_normalized_k2() {
        let m = vec![vec![1.0, -1.0], vec![-1.0, 1.0]];
        let sd = eigh(&m).unwrap();
        assert!(sd.eigenvalues[0].abs() < 1e-12);
        assert!((sd.eigenvalues[1] - 2.0).abs() < 1e-12);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((sd.eigenvectors[0][0] - h).abs() < 1e-12);
        assert!((sd.eigenvectors[0][1] - h).abs() < 1e-12);
    }

    #[test]
    fn eigh_of_diagonal_sorts_entries() {
        let m = vec![vec![3.0, 0.0, 0.0], vec![0.0, -1.0, 0.0], vec![0.0, 0.0, 2.0]];
        let sd = eigh(&m).unwrap();
        assert_eq!(sd.eigenvalues, vec![-1.0, 2.0, 3.0]);
        assert_eq!(sd.eigenvectors[0], vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn eigh_rejects_asymmetric() {
        let m = vec![vec![1.0, 2.0], vec![0.0, 1.0]];
        assert_eq!(eigh(&m).unwrap_err(), Error::NotSymmetric(0, 1));
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(format_rational(&q(6, 4)), "3/2");
        assert_eq!(format_rational(&ratio(29)), "29/1");
        assert_eq!(format_rational(&q(-2, 6)), "-1/3");
    }
}
