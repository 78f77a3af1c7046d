//! Dense integer matrices: Hermite and Smith reduction, determinants, and
//! quotients of `Z^m` by a sublattice.

use std::fmt;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed};
use serde::{Deserialize, Serialize};

/// Integer types the lattice code runs on.
pub trait Scalar:
    Integer + Signed + Copy + CheckedAdd + CheckedSub + CheckedMul + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Integer + Signed + Copy + CheckedAdd + CheckedSub + CheckedMul + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

fn add<T: Scalar>(a: T, b: T) -> T {
    a.checked_add(&b).expect("integer overflow in lattice arithmetic")
}

fn sub<T: Scalar>(a: T, b: T) -> T {
    a.checked_sub(&b).expect("integer overflow in lattice arithmetic")
}

fn mul<T: Scalar>(a: T, b: T) -> T {
    a.checked_mul(&b).expect("integer overflow in lattice arithmetic")
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    /// Matrix with the given vectors as columns, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = add(out[(i, j)], mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// `v ↦ self · v` for a column vector.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (&a, &b)| add(acc, mul(a, b)))
            })
            .collect()
    }

    pub fn sub(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| sub(a, b)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == if i == j { T::one() } else { T::zero() }))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += k · row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, k: T) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self[(src, j)];
            if !s.is_zero() {
                self[(dst, j)] = add(self[(dst, j)], mul(k, s));
            }
        }
    }

    /// `col[dst] += k · col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, k: T) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self[(i, src)];
            if !s.is_zero() {
                self[(i, dst)] = add(self[(i, dst)], mul(k, s));
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)];
        }
    }

    /// Row Hermite normal form `H = U · self` with `U` unimodular. Pivots are
    /// positive and entries above a pivot lie in `[0, pivot)`; zero rows come
    /// last.
    pub fn hermite(&self) -> (Matrix<T>, Matrix<T>) {
        let mut h = self.clone();
        let mut u = Matrix::identity(self.rows);
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            loop {
                // Smallest nonzero entry at or below row r.
                let pivot = (r..h.rows)
                    .filter(|&i| !h[(i, c)].is_zero())
                    .min_by_key(|&i| h[(i, c)].abs());
                let Some(p) = pivot else { break };
                h.swap_rows(r, p);
                u.swap_rows(r, p);
                let mut done = true;
                for i in r + 1..h.rows {
                    let x = h[(i, c)];
                    if !x.is_zero() {
                        let q = x.div_floor(&h[(r, c)]);
                        h.add_row(i, r, -q);
                        u.add_row(i, r, -q);
                        if !h[(i, c)].is_zero() {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if h[(r, c)].is_zero() {
                continue;
            }
            if h[(r, c)].is_negative() {
                h.negate_row(r);
                u.negate_row(r);
            }
            let p = h[(r, c)];
            for i in 0..r {
                let q = h[(i, c)].div_floor(&p);
                h.add_row(i, r, -q);
                u.add_row(i, r, -q);
            }
            r += 1;
        }
        (h, u)
    }

    /// Diagonalize by unimodular row and column operations,
    /// `D = P · self · Q`. Returns the nonzero diagonal (absolute values, not
    /// necessarily in divisibility order) and `Q`.
    pub fn diagonalize(&self) -> (Vec<T>, Matrix<T>) {
        let mut a = self.clone();
        let mut q = Matrix::identity(self.cols);
        let mut diag = Vec::new();
        let mut t = 0;
        while t < a.rows.min(a.cols) {
            let mut best: Option<(usize, usize)> = None;
            for i in t..a.rows {
                for j in t..a.cols {
                    let x = a[(i, j)];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap_rows(t, bi);
            a.swap_cols(t, bj);
            q.swap_cols(t, bj);
            loop {
                let p = a[(t, t)];
                let mut clean = true;
                for i in t + 1..a.rows {
                    let x = a[(i, t)];
                    if !x.is_zero() {
                        a.add_row(i, t, -x.div_floor(&p));
                        if !a[(i, t)].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..a.cols {
                    let x = a[(t, j)];
                    if !x.is_zero() {
                        let k = -x.div_floor(&p);
                        a.add_col(j, t, k);
                        q.add_col(j, t, k);
                        if !a[(t, j)].is_zero() {
                            clean = false;
                        }
                    }
                }
                if clean {
                    break;
                }
                // Bring the smallest remaining entry of row/column t to the pivot.
                let mut best = (t, t);
                for i in t..a.rows {
                    if !a[(i, t)].is_zero() && a[(i, t)].abs() < a[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t..a.cols {
                    if !a[(t, j)].is_zero() && a[(t, j)].abs() < a[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap_rows(t, best.0);
                } else if best.1 != t {
                    a.swap_cols(t, best.1);
                    q.swap_cols(t, best.1);
                }
            }
            diag.push(a[(t, t)].abs());
            t += 1;
        }
        (diag, q)
    }

    pub fn rank(&self) -> usize {
        self.diagonalize().0.len()
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = sub(mul(a[(i, j)], a[(k, k)]), mul(a[(i, k)], a[(k, j)]));
                    a[(i, j)] = v / prev;
                }
            }
            prev = a[(k, k)];
        }
        mul(sign, a[(n - 1, n - 1)])
    }

    /// Inverse of a unimodular matrix, `None` if `|det| ≠ 1`.
    pub fn unimodular_inverse(&self) -> Option<Matrix<T>> {
        if self.rows != self.cols {
            return None;
        }
        let (h, u) = self.hermite();
        h.is_identity().then_some(u)
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// The quotient `Z^m / L` for a sublattice `L`, when it is free.
#[derive(Clone, Debug)]
pub struct Quotient<T: fmt::Display> {
    /// `m × r` matrix; `x ↦ x · projection` is the quotient map on row vectors.
    pub projection: Matrix<T>,
    /// `r × m`; row `k` maps to the `k`-th unit vector.
    pub lifts: Matrix<T>,
}

/// Outcome of [`quotient`] when torsion is present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionError<T>(pub Vec<T>);

/// `Z^m / span(relations)`, with the projection put in Hermite form so it
/// only depends on the lattice.
pub fn quotient<T: Scalar>(m: usize, relations: &[Vec<T>]) -> Result<Quotient<T>, TorsionError<T>> {
    let (diag, q) = if relations.is_empty() {
        (Vec::new(), Matrix::identity(m))
    } else {
        Matrix::from_rows(relations).diagonalize()
    };
    let torsion: Vec<T> = diag.iter().copied().filter(|d| !d.is_one()).collect();
    if !torsion.is_empty() {
        return Err(TorsionError(torsion));
    }
    let r = diag.len();
    let free = m - r;
    // x ∈ L iff x·Q vanishes in the last m−r coordinates.
    let mut proj = Matrix::zeros(m, free);
    for i in 0..m {
        for k in 0..free {
            proj[(i, k)] = q[(i, r + k)];
        }
    }
    let qinv = q.unimodular_inverse().expect("column operations are unimodular");
    let mut lifts = Matrix::zeros(free, m);
    for k in 0..free {
        for j in 0..m {
            lifts[(k, j)] = qinv[(r + k, j)];
        }
    }
    // Canonical form: Hermite-reduce the rows of projectionᵀ.
    let (h, u) = proj.transpose().hermite();
    let projection = h.transpose();
    let ut_inv = u.transpose().unimodular_inverse().expect("unimodular");
    let lifts = ut_inv.mul(&lifts);
    Ok(Quotient { projection, lifts })
}

impl<T: Scalar> Quotient<T> {
    pub fn rank(&self) -> usize {
        self.projection.cols()
    }

    pub fn project(&self, x: &[T]) -> Vec<T> {
        self.projection.transpose().apply(x)
    }
}

/// Concrete matrices used throughout the crate.
pub type Int = i64;
pub type IntMatrix = Matrix<Int>;

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        Matrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn hermite_form() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let (h, u) = a.hermite();
        assert_eq!(u.mul(&a), h);
        assert_eq!(u.det().abs(), 1);
        for i in 0..3 {
            for j in 0..i {
                assert_eq!(h[(i, j)], 0);
            }
        }
        assert!(h[(0, 0)] > 0);
    }

    #[test]
    fn determinants() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).det(), -2);
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), -1);
        assert_eq!(m(&[&[2, 0, 0], &[0, 3, 0], &[1, 1, 1]]).det(), 6);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), 0);
        assert_eq!(IntMatrix::identity(5).det(), 1);
    }

    #[test]
    fn diagonal_and_torsion() {
        let (d, _) = m(&[&[2, 0], &[0, 3]]).diagonalize();
        let prod: i64 = d.iter().product();
        assert_eq!(prod, 6);
        assert_eq!(quotient::<i64>(2, &[vec![2, 0]]).unwrap_err(), TorsionError(vec![2]));
    }

    #[test]
    fn free_quotient() {
        let rels = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let q = quotient(3, &rels).unwrap();
        assert_eq!(q.rank(), 1);
        for r in &rels {
            assert_eq!(q.project(r), vec![0]);
        }
        let back = q.project(&q.lifts.row(0).to_vec());
        assert_eq!(back, vec![1]);
        // The projection is canonical: reordering relations changes nothing.
        let q2 = quotient(3, &[vec![1, 0, -1], vec![0, 1, 1]]).unwrap();
        assert_eq!(q.projection, q2.projection);
    }

    #[test]
    fn unimodular_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.unimodular_inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(m(&[&[2, 0], &[0, 1]]).unimodular_inverse().is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
            prop::collection::vec(-4i64..=4, rows * cols).prop_map(move |v| {
                Matrix::from_rows(&v.chunks(cols).map(|c| c.to_vec()).collect::<Vec<_>>())
            })
        }

        proptest! {
            #[test]
            fn hermite_is_reachable(a in small(4, 5)) {
                let (h, u) = a.hermite();
                prop_assert_eq!(u.mul(&a), h.clone());
                prop_assert_eq!(u.det().abs(), 1);
                prop_assert_eq!(h.hermite().0, h);
            }

            #[test]
            fn det_is_multiplicative(a in small(3, 3), b in small(3, 3)) {
                prop_assert_eq!(a.mul(&b).det(), a.det() * b.det());
            }

            #[test]
            fn rank_matches_det(a in small(3, 3)) {
                prop_assert_eq!(a.rank() == 3, a.det() != 0);
            }
        }
    }
}
