//! Exact linear algebra over arbitrary-precision rationals.
//!
//! Dense vectors and row-major matrices with exact determinants
//! (fraction-free Bareiss elimination on integer input, rational Gaussian
//! elimination otherwise), Cramer solves and Gram matrices. Everything is
//! value-semantic and reentrant.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{Int, Rational};

/// A dense vector of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    coords: Vec<Rational>,
}

impl Vector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Vector { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector {
            coords: coords.iter().map(|&c| Rational::from_integer(Int::from(c))).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Vector {
            coords: vec![Rational::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.coords.iter()
    }

    pub fn dot(&self, other: &Vector) -> Result<Rational> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "dot product of vectors with dims {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        let mut acc = Rational::zero();
        for (a, b) in self.coords.iter().zip(other.coords.iter()) {
            acc += a * b;
        }
        Ok(acc)
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(self).expect("same vector")
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "difference of vectors with dims {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(Vector::new(
            self.coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "sum of vectors with dims {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(Vector::new(
            self.coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn scale(&self, s: &Rational) -> Vector {
        Vector::new(self.coords.iter().map(|c| c * s).collect())
    }

    /// True when every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.denom().is_one())
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.coords[i]
    }
}

impl From<Vec<Rational>> for Vector {
    fn from(coords: Vec<Rational>) -> Self {
        Vector::new(coords)
    }
}

/// A dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| Rational::from_integer(Int::from(v))).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vector]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.dim());
        if cols.iter().any(|v| v.dim() != r) {
            return Err(Error::DimensionMismatch("mixed column dimensions".into()));
        }
        let mut m = Matrix::zero(r, c);
        for (j, v) in cols.iter().enumerate() {
            for i in 0..r {
                m.set(i, j, v[i].clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Copy of the matrix with column `col` replaced by `b`.
    pub fn with_column(&self, col: usize, b: &Vector) -> Result<Matrix> {
        if b.dim() != self.rows {
            return Err(Error::DimensionMismatch("replacement column has wrong length".into()));
        }
        let mut m = self.clone();
        for i in 0..self.rows {
            m.set(i, col, b[i].clone());
        }
        Ok(m)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|c| c.denom().is_one())
    }

    /// Exact determinant. The 0x0 determinant is 1 by convention.
    ///
    /// Integer input goes through fraction-free Bareiss elimination; general
    /// rational input through Gaussian elimination pivoting on the largest
    /// numerator magnitude in the column.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Ok(Rational::one());
        }
        if self.is_integral() {
            Ok(Rational::from_integer(self.det_bareiss()))
        } else {
            Ok(self.det_gauss())
        }
    }

    fn det_bareiss(&self) -> Int {
        let n = self.rows;
        let mut m: Vec<Vec<Int>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).numer().clone()).collect())
            .collect();
        let mut sign = 1i32;
        let mut prev = Int::one();
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return Int::zero();
                };
                m.swap(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
                m[i][k] = Int::zero();
            }
            prev = m[k][k].clone();
        }
        let d = std::mem::take(&mut m[n - 1][n - 1]);
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    fn det_gauss(&self) -> Rational {
        let n = self.rows;
        let mut m: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut det = Rational::one();
        for k in 0..n {
            // Pivot on the largest numerator magnitude to temper growth.
            let pivot_row = (k..n)
                .filter(|&r| !m[r][k].is_zero())
                .max_by(|&a, &b| m[a][k].numer().abs().cmp(&m[b][k].numer().abs()));
            let Some(p) = pivot_row else {
                return Rational::zero();
            };
            if p != k {
                m.swap(k, p);
                det = -det;
            }
            let pivot = m[k][k].clone();
            det *= &pivot;
            for i in k + 1..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let factor = &m[i][k] / &pivot;
                for j in k..n {
                    let sub = &factor * &m[k][j];
                    m[i][j] -= sub;
                }
            }
        }
        det
    }

    /// Solve `M beta = b` by Cramer's rule: `beta_i = det(M_i)/det(M)` where
    /// `M_i` replaces column `i` of `M` by `b`.
    pub fn solve_cramer(&self, b: &Vector) -> Result<Vector> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("Cramer solve needs a square matrix".into()));
        }
        if b.dim() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "Cramer solve: matrix side {} vs vector dim {}",
                self.rows,
                b.dim()
            )));
        }
        let d = self.det()?;
        if d.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let mut beta = Vec::with_capacity(self.cols);
        for i in 0..self.cols {
            let di = self.with_column(i, b)?.det()?;
            beta.push(di / &d);
        }
        Ok(Vector::new(beta))
    }

    /// Solve `M x = b` for square nonsingular `M` by Gaussian elimination.
    /// Faster than the Cramer route on repeated solves; the two agree exactly.
    pub fn solve_gauss(&self, b: &Vector) -> Result<Vector> {
        if !self.is_square() || b.dim() != self.rows {
            return Err(Error::DimensionMismatch("Gaussian solve needs square M and matching b".into()));
        }
        match solve_linear(self, b)? {
            LinearSolution::Unique(x) => Ok(Vector::new(x)),
            _ => Err(Error::SingularMatrix),
        }
    }

    /// Rank by rational Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        rank_in_place(&mut m)
    }
}

fn rank_in_place(m: &mut [Vec<Rational>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let pivot = m[row][col].clone();
        for r in row + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..cols {
                let sub = &factor * &m[row][c];
                m[r][c] -= sub;
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Outcome of an exact linear solve of `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    /// The system has exactly one solution.
    Unique(Vec<Rational>),
    /// Consistent with free variables; the particular solution sets them to zero.
    Underdetermined(Vec<Rational>),
    Inconsistent,
}

/// Exact solve of a general (possibly rectangular or singular) system.
pub fn solve_linear(a: &Matrix, b: &Vector) -> Result<LinearSolution> {
    if b.dim() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "solve: {} rows vs rhs dim {}",
            a.rows(),
            b.dim()
        )));
    }
    let rows = a.rows();
    let cols = a.cols();
    // Augmented matrix [A | b].
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rational> = (0..cols).map(|j| a.get(i, j).clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let pivot = m[row][col].clone();
        for c in col..=cols {
            let v = &m[row][c] / &pivot;
            m[row][c] = v;
        }
        for r in 0..rows {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..=cols {
                let sub = &factor * &m[row][c];
                m[r][c] -= sub;
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    // Inconsistent iff a zero row has a nonzero rhs.
    for r in row..rows {
        if !m[r][cols].is_zero() {
            return Ok(LinearSolution::Inconsistent);
        }
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &col) in pivot_cols.iter().enumerate() {
        x[col] = m[i][cols].clone();
    }
    if pivot_cols.len() == cols {
        Ok(LinearSolution::Unique(x))
    } else {
        Ok(LinearSolution::Underdetermined(x))
    }
}

/// First kernel vector of `A` under the deterministic convention that the
/// lowest-index free column is set to one and later free columns to zero.
/// Returns `None` when `A` has full column rank.
pub fn nullspace_vector(a: &Matrix) -> Option<Vec<Rational>> {
    let rows = a.rows();
    let cols = a.cols();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| (0..cols).map(|j| a.get(i, j).clone()).collect())
        .collect();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let pivot = m[row][col].clone();
        for c in col..cols {
            let v = &m[row][c] / &pivot;
            m[row][c] = v;
        }
        for r in 0..rows {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..cols {
                let sub = &factor * &m[row][c];
                m[r][c] -= sub;
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let free = (0..cols).find(|c| !pivot_cols.contains(c))?;
    let mut v = vec![Rational::zero(); cols];
    v[free] = Rational::one();
    for (i, &col) in pivot_cols.iter().enumerate() {
        v[col] = -m[i][free].clone();
    }
    Some(v)
}

/// Gram matrix of a vector family: entry (i, j) is `w_i . w_j`.
pub fn gram(w: &[Vector]) -> Result<Matrix> {
    if let Some(first) = w.first() {
        if w.iter().any(|v| v.dim() != first.dim()) {
            return Err(Error::DimensionMismatch("gram of vectors with mixed dimensions".into()));
        }
    }
    let n = w.len();
    let mut g = Matrix::zero(n, n);
    for i in 0..n {
        for j in i..n {
            let d = w[i].dot(&w[j])?;
            g.set(j, i, d.clone());
            g.set(i, j, d);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use proptest::prelude::*;
    use rand::Rng as _;

    /// Naive Laplace cofactor expansion, the independent determinant oracle.
    fn det_laplace(m: &Matrix) -> Rational {
        let n = m.rows();
        if n == 0 {
            return Rational::one();
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            if m.get(0, j).is_zero() {
                continue;
            }
            let mut minor = Matrix::zero(n - 1, n - 1);
            for i in 1..n {
                let mut cj = 0;
                for c in 0..n {
                    if c == j {
                        continue;
                    }
                    minor.set(i - 1, cj, m.get(i, c).clone());
                    cj += 1;
                }
            }
            let term = m.get(0, j) * det_laplace(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn rand_int_matrix(rng: &mut impl rand::Rng, n: usize, lo: i64, hi: i64) -> Matrix {
        Matrix::from_int_rows(
            &(0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn det_identity() {
        assert_eq!(Matrix::identity(2).det().unwrap(), rat(1));
        assert_eq!(Matrix::identity(0).det().unwrap(), rat(1));
    }

    #[test]
    fn det_2x2_closed_form() {
        let m = Matrix::from_int_rows(&[vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(m.det().unwrap(), rat(3));
    }

    #[test]
    fn det_matches_laplace_oracle() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x1a7a);
        for _ in 0..50 {
            let m = rand_int_matrix(&mut rng, 5, -9, 9);
            assert_eq!(m.det().unwrap(), det_laplace(&m));
        }
    }

    #[test]
    fn det_rational_path_matches_laplace() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(0xbeef);
        for _ in 0..30 {
            let rows: Vec<Vec<Rational>> = (0..4)
                .map(|_| {
                    (0..4)
                        .map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=7)))
                        .collect()
                })
                .collect();
            let m = Matrix::from_rows(rows).unwrap();
            assert_eq!(m.det().unwrap(), det_laplace(&m));
        }
    }

    #[test]
    fn det_rejects_non_square() {
        let m = Matrix::zero(2, 3);
        assert!(matches!(m.det(), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn cramer_identity_and_diagonal() {
        let id = Matrix::identity(2);
        let b = Vector::new(vec![rat(3), ratio(1, 2)]);
        assert_eq!(id.solve_cramer(&b).unwrap(), b);

        let m = Matrix::from_int_rows(&[vec![2, 0], vec![0, 4]]).unwrap();
        let b = Vector::from_ints(&[2, 2]);
        assert_eq!(
            m.solve_cramer(&b).unwrap(),
            Vector::new(vec![rat(1), ratio(1, 2)])
        );
    }

    #[test]
    fn cramer_rejects_singular() {
        let m = Matrix::from_int_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        let b = Vector::from_ints(&[1, 1]);
        assert!(matches!(m.solve_cramer(&b), Err(Error::SingularMatrix)));
    }

    #[test]
    fn cramer_residual_random_4x4() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let mut done = 0;
        while done < 20 {
            let m = rand_int_matrix(&mut rng, 4, -9, 9);
            if m.det().unwrap().is_zero() {
                continue;
            }
            let b = Vector::from_ints(&[
                rng.gen_range(-9..=9),
                rng.gen_range(-9..=9),
                rng.gen_range(-9..=9),
                rng.gen_range(-9..=9),
            ]);
            let x = m.solve_cramer(&b).unwrap();
            let gauss = m.solve_gauss(&b).unwrap();
            assert_eq!(x, gauss);
            for i in 0..4 {
                let mut acc = Rational::zero();
                for j in 0..4 {
                    acc += m.get(i, j) * &x[j];
                }
                assert_eq!(acc, b[i]);
            }
            done += 1;
        }
    }

    #[test]
    fn gram_examples() {
        let e1 = Vector::from_ints(&[1, 0]);
        let e2 = Vector::from_ints(&[0, 1]);
        assert_eq!(gram(&[e1, e2]).unwrap(), Matrix::identity(2));

        let w1 = Vector::from_ints(&[1, 1, 1]);
        let w2 = Vector::from_ints(&[-1, 1, 0]);
        let g = gram(&[w1, w2]).unwrap();
        assert_eq!(g, Matrix::from_int_rows(&[vec![3, 0], vec![0, 2]]).unwrap());

        let empty = gram(&[]).unwrap();
        assert_eq!(empty.rows(), 0);
        assert_eq!(empty.cols(), 0);
        assert_eq!(empty.det().unwrap(), rat(1));
    }

    #[test]
    fn gram_rejects_mixed_dims() {
        let a = Vector::from_ints(&[1, 0]);
        let b = Vector::from_ints(&[1, 0, 0]);
        assert!(gram(&[a, b]).is_err());
    }

    #[test]
    fn nullspace_of_dependent_columns() {
        // Columns (1,0), (0,1), (1,1): kernel spanned by (-1,-1,1), with the
        // free column pinned to one.
        let a = Matrix::from_int_rows(&[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let v = nullspace_vector(&a).unwrap();
        assert_eq!(v, vec![rat(-1), rat(-1), rat(1)]);
        assert!(nullspace_vector(&Matrix::identity(3)).is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn det_transpose_invariant(seed in any::<u64>(), n in 1usize..=6) {
            use rand::SeedableRng;
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let m = rand_int_matrix(&mut rng, n, -5, 5);
            prop_assert_eq!(m.det().unwrap(), m.transpose().det().unwrap());
        }

        #[test]
        fn det_alternating_on_swapped_rows(seed in any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let m = rand_int_matrix(&mut rng, 4, -5, 5);
            let mut rows: Vec<Vec<Rational>> = (0..4)
                .map(|i| (0..4).map(|j| m.get(i, j).clone()).collect())
                .collect();
            rows.swap(0, 2);
            let swapped = Matrix::from_rows(rows).unwrap();
            prop_assert_eq!(m.det().unwrap(), -swapped.det().unwrap());
        }

        #[test]
        fn det_multilinear_in_first_row(seed in any::<u64>(), a in -4i64..=4, b in -4i64..=4) {
            use rand::SeedableRng;
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let m = rand_int_matrix(&mut rng, 3, -5, 5);
            let u: Vec<i64> = (0..3).map(|_| rng.gen_range(-5..=5)).collect();
            let v: Vec<i64> = (0..3).map(|_| rng.gen_range(-5..=5)).collect();
            let with_row = |row: Vec<Rational>| {
                let mut rows: Vec<Vec<Rational>> = (0..3)
                    .map(|i| (0..3).map(|j| m.get(i, j).clone()).collect())
                    .collect();
                rows[0] = row;
                Matrix::from_rows(rows).unwrap()
            };
            let au_bv: Vec<Rational> = (0..3)
                .map(|j| rat(a) * rat(u[j]) + rat(b) * rat(v[j]))
                .collect();
            let lhs = with_row(au_bv).det().unwrap();
            let rhs = rat(a) * with_row(u.iter().map(|&x| rat(x)).collect()).det().unwrap()
                + rat(b) * with_row(v.iter().map(|&x| rat(x)).collect()).det().unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn gram_is_symmetric_psd(seed in any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let vs: Vec<Vector> = (0..3)
                .map(|_| Vector::from_ints(&[rng.gen_range(-5..=5), rng.gen_range(-5..=5), rng.gen_range(-5..=5), rng.gen_range(-5..=5)]))
                .collect();
            let g = gram(&vs).unwrap();
            prop_assert_eq!(g.clone(), g.transpose());
            // x^T G x = ||sum x_i v_i||^2 >= 0 for random rational x.
            let x: Vec<Rational> = (0..3).map(|_| ratio(rng.gen_range(-5..=5), rng.gen_range(1..=5))).collect();
            let mut quad = Rational::zero();
            for i in 0..3 {
                for j in 0..3 {
                    quad += &x[i] * g.get(i, j) * &x[j];
                }
            }
            prop_assert!(quad >= Rational::zero());
        }
    }
}
