//! Exact linear algebra over the rationals.
//!
//! Rank and determinants use fraction-free (Bareiss) elimination on rows whose
//! denominators have been cleared, so intermediate values stay integral and
//! bounded by minors of the input. There is no tolerance anywhere: rank is the
//! rank over ℚ, which equals the rank over ℝ.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{lcm_denominators, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix data has {got} entries, expected {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::BadShape { rows, cols, got: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from integer entries (row-major).
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "from_i64: wrong entry count");
        Self { rows, cols, data: entries.iter().map(|&v| Rational::from_integer(v.into())).collect() }
    }

    /// The 3×3 matrix whose rows are consecutive triples of `v`.
    pub fn from_vec9(v: &[Rational]) -> Self {
        assert_eq!(v.len(), 9, "from_vec9 needs nine entries");
        Self { rows: 3, cols: 3, data: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Rational> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} * vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Self { rows: idx.len(), cols: self.cols, data }
    }

    pub fn delete_col(&self, j: usize) -> Self {
        let mut data = Vec::with_capacity(self.rows * (self.cols - 1));
        for i in 0..self.rows {
            for (k, v) in self.row(i).iter().enumerate() {
                if k != j {
                    data.push(v.clone());
                }
            }
        }
        Self { rows: self.rows, cols: self.cols - 1, data }
    }

    /// Scales so that the first nonzero entry (row-major) equals one.
    pub fn normalized(&self) -> Self {
        match self.data.iter().find(|v| !v.is_zero()) {
            Some(lead) => self.scale(&lead.recip()),
            None => self.clone(),
        }
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| if x.is_zero() || y.is_zero() { acc } else { acc + x * y })
}

pub fn cross(a: &[Rational], b: &[Rational]) -> [Rational; 3] {
    [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

/// `[v]×`, the matrix with `[v]× w = v × w`.
pub fn skew(v: &[Rational]) -> RatMatrix {
    let z = Rational::zero();
    RatMatrix::from_rows(vec![
        vec![z.clone(), -v[2].clone(), v[1].clone()],
        vec![v[2].clone(), z.clone(), -v[0].clone()],
        vec![-v[1].clone(), v[0].clone(), z],
    ])
    .expect("3x3")
}

/// Rows with denominators cleared, as integers.
fn integer_rows(a: &RatMatrix) -> Vec<Vec<BigInt>> {
    (0..a.rows)
        .map(|i| {
            let row = a.row(i);
            let l = lcm_denominators(row);
            row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
        })
        .collect()
}

/// Fraction-free row echelon form. Returns the pivot columns and the
/// permutation parity; `m` is overwritten with the echelon form.
fn bareiss_echelon(m: &mut [Vec<BigInt>], cols: usize) -> (Vec<usize>, bool) {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut odd = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            odd = !odd;
        }
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = piv * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (pivots, odd)
}

/// Exact rank over ℚ.
pub fn rank(a: &RatMatrix) -> usize {
    if a.rows == 0 || a.cols == 0 {
        return 0;
    }
    let mut m = integer_rows(a);
    bareiss_echelon(&mut m, a.cols).0.len()
}

/// Indices of a maximal set of linearly independent rows, chosen greedily
/// in input order.
pub fn independent_rows(a: &RatMatrix) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..a.rows {
        let mut trial = chosen.clone();
        trial.push(i);
        if rank(&a.select_rows(&trial)) == trial.len() {
            chosen = trial;
            if chosen.len() == a.cols {
                break;
            }
        }
    }
    chosen
}

/// Reduced row echelon form and pivot columns.
pub fn rref(a: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut m = integer_rows(a);
    let (pivots, _) = bareiss_echelon(&mut m, a.cols);
    let r = pivots.len();
    let mut rows: Vec<Vec<Rational>> =
        m.into_iter().take(r).map(|row| row.into_iter().map(Rational::from_integer).collect()).collect();
    for (i, &pc) in pivots.iter().enumerate().rev() {
        let inv = rows[i][pc].recip();
        for v in rows[i].iter_mut() {
            *v *= &inv;
        }
        for k in 0..i {
            let f = rows[k][pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in pc..a.cols {
                let delta = &f * &rows[i][j];
                rows[k][j] -= delta;
            }
        }
    }
    let data = rows.into_iter().flatten().collect();
    (RatMatrix { rows: r, cols: a.cols, data }, pivots)
}

/// Basis of the right kernel, one vector per free column of the reduced row
/// echelon form: the vector has a 1 at its free column, 0 at the other free
/// columns, and is determined on the pivot columns.
pub fn kernel_basis(a: &RatMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(a);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); a.cols];
            v[f] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(i, f).clone();
            }
            v
        })
        .collect()
}

pub fn det(a: &RatMatrix) -> Result<Rational, LinalgError> {
    if a.rows != a.cols {
        return Err(LinalgError::NotSquare(a.rows, a.cols));
    }
    let n = a.rows;
    if n == 0 {
        return Ok(Rational::one());
    }
    if n == 3 {
        return Ok(det3(a));
    }
    let scales: Vec<BigInt> = (0..n).map(|i| lcm_denominators(a.row(i))).collect();
    let mut m = integer_rows(a);
    let (pivots, odd) = bareiss_echelon(&mut m, n);
    if pivots.len() < n {
        return Ok(Rational::zero());
    }
    let num = if odd { -m[n - 1][n - 1].clone() } else { m[n - 1][n - 1].clone() };
    let den = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    Ok(Rational::new(num, den))
}

fn det3(a: &RatMatrix) -> Rational {
    let g = |i, j| a.get(i, j);
    g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
        + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0))
}

/// The solution `X` of `A X = B` for square nonsingular `A`, or `None` when
/// `A` is singular. Forward elimination is fraction-free over all columns
/// of `[A | B]`; back substitution computes `d·X` in integers, where `d` is
/// the last pivot, and every division in it is exact.
pub fn solve(a: &RatMatrix, b: &RatMatrix) -> Option<RatMatrix> {
    let n = a.rows;
    if a.cols != n || b.rows != n {
        return None;
    }
    let w = n + b.cols;
    let mut m = integer_rows(&RatMatrix {
        rows: n,
        cols: w,
        data: (0..n).flat_map(|i| a.row(i).iter().chain(b.row(i)).cloned()).collect(),
    });
    let mut prev = BigInt::one();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(p, c);
        let (top, rest) = m.split_at_mut(c + 1);
        let pivot_row = &top[c];
        let piv = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..w {
                let v = piv * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = m[c][c].clone();
    }
    let d = prev;
    let mut out = RatMatrix::zeros(n, b.cols);
    for k in 0..b.cols {
        let mut scaled = vec![BigInt::zero(); n];
        for i in (0..n).rev() {
            let mut acc = &d * &m[i][n + k];
            for j in i + 1..n {
                acc -= &m[i][j] * &scaled[j];
            }
            scaled[i] = acc / &m[i][i];
        }
        for (i, v) in scaled.into_iter().enumerate() {
            out.set(i, k, Rational::new(v, d.clone()));
        }
    }
    Some(out)
}

pub fn inverse(a: &RatMatrix) -> Option<RatMatrix> {
    solve(a, &RatMatrix::identity(a.rows))
}

/// Signed maximal minors `((-1)^i det(Z with column i removed))_i` of an
/// `n × (n+1)` matrix. Nonzero iff the matrix has full row rank, and always
/// orthogonal to every row.
pub fn cramer_vector(z: &RatMatrix) -> Result<Vec<Rational>, LinalgError> {
    if z.cols != z.rows + 1 {
        return Err(LinalgError::DimensionMismatch(format!(
            "cramer vector needs an n x (n+1) matrix, got {}x{}",
            z.rows, z.cols
        )));
    }
    (0..z.cols)
        .map(|i| {
            let d = det(&z.delete_col(i))?;
            Ok(if i % 2 == 0 { d } else { -d })
        })
        .collect()
}

/// The 2×2 minor of a 3×3 matrix obtained by deleting row `i` and column
/// `j` (zero-based).
pub fn minor2x2(a: &RatMatrix, i: usize, j: usize) -> Rational {
    assert!(a.rows == 3 && a.cols == 3 && i < 3 && j < 3, "minor2x2 needs a 3x3 matrix");
    let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
    let c: Vec<usize> = (0..3).filter(|&k| k != j).collect();
    a.get(r[0], c[0]) * a.get(r[1], c[1]) - a.get(r[0], c[1]) * a.get(r[1], c[0])
}

/// A point pair `(x, y)` in two images, affine coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Correspondence {
    pub x: [Rational; 2],
    pub y: [Rational; 2],
}

impl Correspondence {
    pub fn new(x: [Rational; 2], y: [Rational; 2]) -> Self {
        Self { x, y }
    }

    pub fn from_i64(x: [i64; 2], y: [i64; 2]) -> Self {
        let r = |v: i64| Rational::from_integer(v.into());
        Self { x: [r(x[0]), r(x[1])], y: [r(y[0]), r(y[1])] }
    }

    pub fn x_h(&self) -> [Rational; 3] {
        [self.x[0].clone(), self.x[1].clone(), Rational::one()]
    }

    pub fn y_h(&self) -> [Rational; 3] {
        [self.y[0].clone(), self.y[1].clone(), Rational::one()]
    }

    /// `y^T ⊗ x^T` of the homogenized points.
    pub fn z_row(&self) -> [Rational; 9] {
        let x = self.x_h();
        let y = self.y_h();
        std::array::from_fn(|k| &y[k / 3] * &x[k % 3])
    }
}

/// The matrices `X`, `Y` (homogenized points as rows) and `Z` (rows
/// `y_i^T ⊗ x_i^T`); `Z · vec(M) = 0` is the epipolar constraint for the
/// row-major vectorization of `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataMatrices {
    pub x: RatMatrix,
    pub y: RatMatrix,
    pub z: RatMatrix,
}

pub fn build_data_matrices(corrs: &[Correspondence]) -> DataMatrices {
    let m = corrs.len();
    let x = corrs.iter().flat_map(|c| c.x_h()).collect();
    let y = corrs.iter().flat_map(|c| c.y_h()).collect();
    let z = corrs.iter().flat_map(|c| c.z_row()).collect();
    DataMatrices {
        x: RatMatrix { rows: m, cols: 3, data: x },
        y: RatMatrix { rows: m, cols: 3, data: y },
        z: RatMatrix { rows: m, cols: 9, data: z },
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn solve_matches_inverse() {
        let a = RatMatrix::from_i64(4, 4, &[2, -1, 0, 3, 1, 4, -2, 0, 0, 5, 1, -1, 3, 0, 2, 7]);
        let b = RatMatrix::from_i64(4, 2, &[1, 0, -3, 2, 5, 1, 0, -4]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, inverse(&a).unwrap().mul(&b).unwrap());
        let halves = a.scale(&Rational::new(1.into(), 3.into()));
        assert_eq!(solve(&halves, &b).unwrap(), x.scale(&Rational::from_integer(3.into())));
        let singular = RatMatrix::from_i64(2, 2, &[1, 2, 2, 4]);
        assert!(solve(&singular, &RatMatrix::identity(2)).is_none());
    }

    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn z_row_column_order() {
        let c = Correspondence::from_i64([1, 2], [3, 4]);
        let expect: Vec<Rational> = [3, 6, 3, 4, 8, 4, 1, 2, 1].iter().map(|&v| int(v)).collect();
        assert_eq!(c.z_row().to_vec(), expect);
        let o = Correspondence::from_i64([0, 0], [0, 0]);
        let mut e = vec![int(0); 9];
        e[8] = int(1);
        assert_eq!(o.z_row().to_vec(), e);
    }

    #[test]
    fn rank_basics() {
        assert_eq!(rank(&RatMatrix::identity(3)), 3);
        assert_eq!(rank(&RatMatrix::zeros(5, 9)), 0);
        let a = RatMatrix::from_i64(3, 3, &[1, 2, 3, 2, 4, 6, 1, 0, 1]);
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn rank_handles_skipped_columns() {
        let a = RatMatrix::from_i64(3, 4, &[0, 2, 1, 0, 0, 4, 2, 1, 0, 0, 0, 3]);
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(kernel_basis(&RatMatrix::identity(3)).is_empty());
    }

    #[test]
    fn kernel_is_rref_normalized() {
        let a = RatMatrix::from_i64(1, 3, &[2, 4, 6]);
        let k = kernel_basis(&a);
        assert_eq!(k, vec![vec![int(-2), int(1), int(0)], vec![int(-3), int(0), int(1)]]);
    }

    #[test]
    fn det_and_inverse() {
        let a = RatMatrix::from_i64(4, 4, &[2, 0, 1, 3, 1, 1, 0, 2, 0, 3, 1, 1, 1, 0, 0, 1]);
        let d = det(&a).unwrap();
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RatMatrix::identity(4));
        assert_eq!(det(&inv).unwrap() * d, int(1));
        let half = RatMatrix::from_rows(vec![vec![frac(1, 2), int(0)], vec![int(0), frac(1, 3)]]).unwrap();
        assert_eq!(det(&half).unwrap(), frac(1, 6));
        let sing = RatMatrix::from_i64(2, 2, &[1, 2, 2, 4]);
        assert_eq!(det(&sing).unwrap(), int(0));
        assert!(inverse(&sing).is_none());
    }

    #[test]
    fn det_sign_tracks_row_swaps() {
        let p = RatMatrix::from_i64(4, 4, &[0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0]);
        assert_eq!(det(&p).unwrap(), int(1));
        let q = RatMatrix::from_i64(4, 4, &[0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]);
        assert_eq!(det(&q).unwrap(), int(-1));
    }

    #[test]
    fn cramer_of_block_identity() {
        let mut z = RatMatrix::zeros(8, 9);
        for i in 0..8 {
            z.set(i, i, int(1));
        }
        let v = cramer_vector(&z).unwrap();
        let mut e = vec![int(0); 9];
        e[8] = int(1);
        assert_eq!(v, e);
        assert!(z.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn cramer_of_rank_deficient_is_zero() {
        let mut z = RatMatrix::zeros(8, 9);
        for i in 0..7 {
            z.set(i, i, int(1));
            z.set(7, i, int(i as i64));
        }
        assert!(cramer_vector(&z).unwrap().iter().all(Zero::is_zero));
        assert!(cramer_vector(&RatMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn minors_of_identity() {
        let i3 = RatMatrix::identity(3);
        assert_eq!(minor2x2(&i3, 0, 0), int(1));
        assert_eq!(minor2x2(&i3, 0, 1), int(0));
    }

    #[test]
    fn shape_errors() {
        assert!(RatMatrix::new(2, 2, vec![int(1)]).is_err());
        let a = RatMatrix::zeros(2, 3);
        assert!(a.mul(&a).is_err());
        assert!(det(&a).is_err());
    }
}
