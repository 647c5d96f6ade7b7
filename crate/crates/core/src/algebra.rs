//! Algebras as matrices of structure constants (MSC).
//!
//! An `n`-dimensional algebra is stored as the `n x n^2` matrix `A` with
//! `e_i e_j = sum_k a_ij^k e_k`: row `k`, column `i*n + j` (zero-based)
//! holds `a_ij^k`. The product of coordinate vectors is `uv = A (u ⊗ v)`.
//! Indices in this API are zero-based.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{kron_vec, Mat, Vector};

/// A square matrix acting on the algebra: a derivation candidate, an
/// automorphism candidate or a basis change.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinMap(Mat);

impl LinMap {
    pub fn new(m: Mat) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "linear map must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(LinMap(m))
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        LinMap(Mat::identity(field, n))
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        LinMap(Mat::zeros(field, n, n))
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        LinMap::new(Mat::from_i64(field, rows)).expect("square")
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn as_mat(&self) -> &Mat {
        &self.0
    }

    pub fn into_mat(self) -> Mat {
        self.0
    }

    pub fn compose(&self, other: &LinMap) -> Result<LinMap> {
        Ok(LinMap(self.0.mul(&other.0)?))
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &LinMap) -> Result<LinMap> {
        Ok(LinMap(self.0.mul(&other.0)?.sub(&other.0.mul(&self.0)?)?))
    }

    pub fn inverse(&self) -> Option<LinMap> {
        self.0.inverse().map(LinMap)
    }
}

impl Deref for LinMap {
    type Target = Mat;
    fn deref(&self) -> &Mat {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `x -> e_i x`
    Left,
    /// `x -> x e_i`
    Right,
}

/// Matrix of structure constants of an `n`-dimensional algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Msc {
    n: usize,
    entries: Mat,
}

impl Msc {
    pub fn new(entries: Mat) -> Result<Self> {
        let n = entries.rows();
        if entries.cols() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "MSC must be n x n^2, got {}x{}",
                entries.rows(),
                entries.cols()
            )));
        }
        Ok(Msc { n, entries })
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        Msc::new(Mat::from_i64(field, rows))
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Msc {
            n,
            entries: Mat::zeros(field, n, n * n),
        }
    }

    /// `e_i^2 = e_i`, `e_i e_j = 0` for `i != j`.
    pub fn diagonal_idempotent(field: FieldSpec, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n * n);
        for i in 0..n {
            m.set(i, i * n + i, field.one());
        }
        Msc { n, entries: m }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.entries.field()
    }

    pub fn entries(&self) -> &Mat {
        &self.entries
    }

    /// `a_ij^k`
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        self.entries.get(k, i * self.n + j)
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        self.entries.col(i * self.n + j)
    }

    fn check_vec(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a {}-dimensional algebra",
                v.len(),
                self.n
            )));
        }
        let field = self.field();
        if let Some(bad) = v.iter().find(|s| !field.contains(s)) {
            return Err(Error::FieldMismatch {
                expected: field.to_string(),
                found: bad.field().to_string(),
            });
        }
        Ok(())
    }

    fn check_map(&self, g: &LinMap) -> Result<()> {
        if g.dim() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} map for a {}-dimensional algebra",
                g.dim(),
                g.dim(),
                self.n
            )));
        }
        if g.field() != self.field() {
            return Err(Error::FieldMismatch {
                expected: self.field().to_string(),
                found: g.field().to_string(),
            });
        }
        Ok(())
    }

    /// `uv = A (u ⊗ v)`
    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vector> {
        self.check_vec(u)?;
        self.check_vec(v)?;
        self.entries.mul_vec(&kron_vec(u, v))
    }

    /// The algebra in the basis `f = e g^{-1}`: `g A (g^{-1} ⊗ g^{-1})`.
    pub fn change_basis(&self, g: &LinMap) -> Result<Msc> {
        self.check_map(g)?;
        let ginv = g.inverse().ok_or(Error::SingularBasisChange)?;
        let k = ginv.kronecker(&ginv)?;
        let entries = g.mul(&self.entries)?.mul(&k)?;
        Ok(Msc { n: self.n, entries })
    }

    /// `Left`: `A_i` with `(A_i)_{kj} = a_ij^k`; `Right`: `A^o_i` with
    /// `(A^o_i)_{kj} = a_ji^k`.
    pub fn side_operator(&self, i: usize, side: Side) -> Result<LinMap> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        let mut m = Mat::zeros(self.field(), self.n, self.n);
        for k in 0..self.n {
            for j in 0..self.n {
                let v = match side {
                    Side::Left => self.constant(i, j, k),
                    Side::Right => self.constant(j, i, k),
                };
                m.set(k, j, v.clone());
            }
        }
        LinMap::new(m)
    }

    pub fn left_operators(&self) -> Vec<LinMap> {
        (0..self.n)
            .map(|i| self.side_operator(i, Side::Left).expect("index in range"))
            .collect()
    }

    pub fn right_operators(&self) -> Vec<LinMap> {
        (0..self.n)
            .map(|i| self.side_operator(i, Side::Right).expect("index in range"))
            .collect()
    }

    /// `[tr(A_1), ..., tr(A_n)]`
    pub fn trace_vector(&self) -> Vec<Scalar> {
        self.left_operators().iter().map(|a| a.trace()).collect()
    }

    /// Assembles `(A_1 | A_2 | ... | A_n)` from left operators.
    pub fn from_left_operators(blocks: &[Mat]) -> Result<Msc> {
        let Some(first) = blocks.first() else {
            return Err(Error::DimensionMismatch("no blocks".into()));
        };
        let n = blocks.len();
        if blocks.iter().any(|b| b.rows() != n || b.cols() != n) {
            return Err(Error::DimensionMismatch(format!(
                "expected {n} blocks of size {n}x{n}"
            )));
        }
        Msc::new(Mat::hstack(first.field(), blocks)?)
    }

    pub fn to_json(&self) -> MscJson {
        MscJson {
            n: self.n,
            field: self.field(),
            entries: self.entries.to_strings(),
        }
    }

    pub fn from_json(j: &MscJson) -> Result<Msc> {
        if j.entries.len() != j.n || j.entries.iter().any(|r| r.len() != j.n * j.n) {
            return Err(Error::DimensionMismatch(format!(
                "entries must be {} rows of {} scalars",
                j.n,
                j.n * j.n
            )));
        }
        Msc::new(Mat::from_strings(j.field, &j.entries)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Msc> {
        let j: MscJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Msc::from_json(&j)
    }
}

/// Interchange form: `{"n":2,"field":{"type":"Q"},"entries":[["0","0","1","0"],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MscJson {
    pub n: usize,
    pub field: FieldSpec,
    pub entries: Vec<Vec<String>>,
}
