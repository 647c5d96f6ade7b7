//! Dense exact matrices and canonical subspaces.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

pub type Vector = Vec<Scalar>;

/// Row-major dense matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from row-major data, checking length and field membership.
    pub fn from_vec(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| !field.contains(s)) {
            return Err(Error::FieldMismatch {
                expected: field.to_string(),
                found: bad.field().to_string(),
            });
        }
        Ok(Mat {
            rows,
            cols,
            field,
            data,
        })
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vector>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Mat::from_vec(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            field,
            data: rows
                .iter()
                .flat_map(|row| row.iter().map(|&v| field.from_i64(v)))
                .collect(),
        }
    }

    /// Column matrix from a vector.
    pub fn column(field: FieldSpec, v: &[Scalar]) -> Self {
        Mat {
            rows: v.len(),
            cols: 1,
            field,
            data: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert!(self.field.contains(&v));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// True iff the matrix is `c * I` for some scalar `c`.
    pub fn is_scalar(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j) == self.get(0, 0)
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    fn check_field(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field.to_string(),
                found: other.field.to_string(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    fn zip_with(&self, other: &Mat, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Mat> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| &acc + self.get(i, i))
    }

    /// `B ⊗ C = (b_ij C)`.
    pub fn kronecker(&self, other: &Mat) -> Result<Mat> {
        self.check_field(other)?;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Mat::zeros(self.field, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let b = self.get(i, j);
                if b.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, b * other.get(k, l));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(field: FieldSpec, blocks: &[Mat]) -> Result<Mat> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch("vstack column counts differ".into()));
            }
            rows += b.rows;
            data.extend_from_slice(&b.data);
        }
        Mat::from_vec(field, rows, cols, data)
    }

    /// Places matrices with equal row counts side by side.
    pub fn hstack(field: FieldSpec, blocks: &[Mat]) -> Result<Mat> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for b in blocks {
                data.extend_from_slice(b.row(r));
            }
        }
        Mat::from_vec(field, rows, cols, data)
    }

    /// Reduced row-echelon form with leading ones, pivoting on the first
    /// nonzero entry of each column. Returns the form and the pivot columns.
    pub fn rref_with_pivots(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> (Mat, usize) {
        let (m, p) = self.rref_with_pivots();
        (m, p.len())
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of `{x : Mx = 0}`.
    pub fn kernel_basis(&self) -> Subspace {
        let (r, pivots) = self.rref_with_pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors = free
            .iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect::<Vec<_>>();
        Subspace::span(self.field, self.cols, &vectors)
    }

    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -&det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv()?;
            for i in c + 1..m.rows {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Mat::hstack(self.field, &[self.clone(), Mat::identity(self.field, n)]).ok()?;
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Text form used in reports: rows of scalar strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(ToString::to_string).collect())
            .collect()
    }

    pub fn from_strings(field: FieldSpec, rows: &[Vec<String>]) -> Result<Mat> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Mat::from_rows(field, parsed)
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        self.get(r, c)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn rref(m: &Mat) -> (Mat, usize) {
    m.rref()
}

pub fn kernel_basis(m: &Mat) -> Subspace {
    m.kernel_basis()
}

pub fn kronecker(b: &Mat, c: &Mat) -> Result<Mat> {
    b.kronecker(c)
}

/// Kronecker product of column vectors.
pub fn kron_vec(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect()
}

/// A subspace of `F^n` stored as its reduced row-echelon basis, so equality
/// is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace::span(field, ambient, &Mat::identity(field, ambient).row_vectors())
    }

    pub fn span(field: FieldSpec, ambient: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let m = Mat::from_rows(field, vectors.to_vec()).expect("vectors of equal length");
        assert_eq!(m.cols(), ambient, "vector length differs from ambient dimension");
        let (r, rank) = m.rref();
        Subspace {
            field,
            ambient,
            basis: (0..rank).map(|i| r.row(i).to_vec()).collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.iter().all(Scalar::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Subspace::span(self.field, self.ambient, &rows).dim() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient, &rows)
    }

    /// `{x : <b, x> = 0 for every basis vector b}`.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.field, self.ambient);
        }
        Mat::from_rows(self.field, self.basis.clone())
            .expect("basis rows")
            .kernel_basis()
    }

    /// Basis as a matrix with one basis vector per column.
    pub fn as_columns(&self) -> Mat {
        if self.basis.is_empty() {
            return Mat::zeros(self.field, self.ambient, 0);
        }
        Mat::from_rows(self.field, self.basis.clone())
            .expect("basis rows")
            .transpose()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.basis
            .iter()
            .map(|v| v.iter().map(ToString::to_string).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn rref_examples() {
        let id = Mat::identity(qf(), 3);
        assert_eq!(rref(&id), (id.clone(), 3));
        let z = Mat::zeros(qf(), 2, 4);
        assert_eq!(rref(&z), (z.clone(), 0));
        let m = Mat::from_i64(qf(), &[&[2, 4], &[1, 2]]);
        assert_eq!(rref(&m), (Mat::from_i64(qf(), &[&[1, 2], &[0, 0]]), 1));
    }

    #[test]
    fn kernel_examples() {
        let m = Mat::from_i64(qf(), &[&[1, 0], &[0, 0]]);
        let k = kernel_basis(&m);
        assert_eq!(k, Subspace::span(qf(), 2, &[vec![qf().zero(), qf().one()]]));
        assert!(kernel_basis(&Mat::identity(qf(), 4)).is_zero());
    }

    #[test]
    fn kernel_over_gf2_matches_enumeration() {
        let gf2 = FieldSpec::prime(2).unwrap();
        let m = Mat::from_i64(gf2, &[&[1, 1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.dim(), 2);
        // brute force over all eight vectors of GF(2)^3
        let mut solutions = 0;
        for bits in 0..8u64 {
            let v: Vec<Scalar> = (0..3).map(|i| gf2.residue((bits >> i) & 1)).collect();
            let in_kernel = m.mul_vec(&v).unwrap()[0].is_zero();
            assert_eq!(in_kernel, k.contains(&v));
            solutions += in_kernel as usize;
        }
        assert_eq!(solutions, 4);
        for v in [[1, 1, 0], [1, 0, 1]] {
            let v: Vec<Scalar> = v.iter().map(|&x| gf2.from_i64(x)).collect();
            assert!(k.contains(&v));
        }
    }

    #[test]
    fn kronecker_examples() {
        let i2 = Mat::identity(qf(), 2);
        assert_eq!(kronecker(&i2, &i2).unwrap(), Mat::identity(qf(), 4));
        let swap = Mat::from_i64(qf(), &[&[0, 1], &[1, 0]]);
        assert_eq!(
            kronecker(&swap, &i2).unwrap(),
            Mat::from_i64(
                qf(),
                &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]
            )
        );
        let b = Mat::from_i64(qf(), &[&[2]]);
        let c = Mat::from_i64(qf(), &[&[1, 3]]);
        assert_eq!(kronecker(&b, &c).unwrap(), Mat::from_i64(qf(), &[&[2, 6]]));
    }

    #[test]
    fn det_and_inverse() {
        let m = Mat::from_i64(qf(), &[&[1, 2], &[3, 4]]);
        assert_eq!(m.det().unwrap(), qf().from_i64(-2));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let gf2 = FieldSpec::prime(2).unwrap();
        assert!(Mat::from_i64(gf2, &[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn annihilator_duality() {
        let w = Subspace::span(qf(), 3, &[vec![qf().one(), qf().one(), qf().zero()]]);
        let ann = w.annihilator();
        assert_eq!(ann.dim(), 2);
        assert_eq!(ann.annihilator(), w);
    }
}
