//! Derivation spaces as kernels of the linearised Leibniz system.
//!
//! `D` is a derivation iff `DA = A(D ⊗ I + I ⊗ D)`. Flattening `D`
//! row-major (`d_km` at slot `k*n + m`) turns this into `M(A) vec(D) = 0`
//! where equation `(k, i, j)` sits at row `k*n^2 + i*n + j`:
//!
//! `sum_m d_km a_ij^m - sum_m a_mj^k d_mi - sum_l a_il^k d_lj = 0`.

use serde::Serialize;

use crate::algebra::{LinMap, Msc};
use crate::error::{Error, Result};
use crate::linalg::Mat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSystem {
    pub base: Msc,
    pub m: Mat,
}

impl DerivationSystem {
    pub fn rank(&self) -> usize {
        self.m.rank()
    }
}

pub fn derivation_system(a: &Msc) -> DerivationSystem {
    let n = a.dim();
    let field = a.field();
    let mut m = Mat::zeros(field, n * n * n, n * n);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let row = k * n * n + i * n + j;
                let mut bump = |slot: usize, v: crate::field::Scalar| {
                    let cur = m.get(row, slot).clone();
                    m.set(row, slot, &cur + &v);
                };
                for s in 0..n {
                    // d_ks a_ij^s
                    bump(k * n + s, a.constant(i, j, s).clone());
                    // - a_sj^k d_si
                    bump(s * n + i, -a.constant(s, j, k));
                    // - a_is^k d_sj
                    bump(s * n + j, -a.constant(i, s, k));
                }
            }
        }
    }
    DerivationSystem {
        base: a.clone(),
        m,
    }
}

/// Un-flattens a row-major `vec(D)`.
fn unflatten(a: &Msc, v: &[crate::field::Scalar]) -> LinMap {
    let n = a.dim();
    LinMap::new(Mat::from_vec(a.field(), n, n, v.to_vec()).expect("n^2 entries")).expect("square")
}

pub fn derivation_basis(a: &Msc) -> Vec<LinMap> {
    derivation_system(a)
        .m
        .kernel_basis()
        .basis()
        .iter()
        .map(|v| unflatten(a, v))
        .collect()
}

/// Direct check of `DA = A(D ⊗ I + I ⊗ D)`, independent of `M(A)`.
pub fn is_derivation(a: &Msc, d: &LinMap) -> Result<bool> {
    if d.dim() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} map for a {}-dimensional algebra",
            d.dim(),
            d.dim(),
            a.dim()
        )));
    }
    let id = Mat::identity(a.field(), a.dim());
    let lhs = d.mul(a.entries())?;
    let sum = d.kronecker(&id)?.add(&id.kronecker(d)?)?;
    let rhs = a.entries().mul(&sum)?;
    Ok(lhs == rhs)
}

pub fn is_trivial_der(a: &Msc) -> bool {
    let n = a.dim();
    derivation_system(a).rank() == n * n
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationReport {
    pub trivial: bool,
    pub dim: usize,
    pub basis: Vec<Vec<Vec<String>>>,
    #[serde(rename = "rank_MA")]
    pub rank_ma: usize,
}

pub fn derivation_report(a: &Msc) -> DerivationReport {
    let sys = derivation_system(a);
    let rank = sys.rank();
    let basis = derivation_basis(a);
    DerivationReport {
        trivial: basis.is_empty(),
        dim: basis.len(),
        basis: basis.iter().map(|d| d.to_strings()).collect(),
        rank_ma: rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn qf() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn system_shape_and_zero_algebra() {
        let z = Msc::zero(qf(), 2);
        let sys = derivation_system(&z);
        assert_eq!((sys.m.rows(), sys.m.cols()), (8, 4));
        assert!(sys.m.is_zero());
        assert_eq!(derivation_basis(&z).len(), 4);
        assert!(!is_trivial_der(&z));
    }

    #[test]
    fn idempotent_algebra_has_rank_four() {
        let e2 = Msc::diagonal_idempotent(qf(), 2);
        assert_eq!(derivation_system(&e2).rank(), 4);
        assert!(derivation_basis(&e2).is_empty());
        assert!(is_trivial_der(&e2));
    }

    #[test]
    fn seed_algebra_has_no_derivations() {
        let s0 = Msc::from_i64(qf(), &[&[0, 0, 1, 0], &[0, 0, 1, 0]]).unwrap();
        assert!(derivation_basis(&s0).is_empty());
    }

    #[test]
    fn direct_route_examples() {
        let e2 = Msc::diagonal_idempotent(qf(), 2);
        assert!(is_derivation(&e2, &LinMap::zero(qf(), 2)).unwrap());
        let d = LinMap::from_i64(qf(), &[&[1, 0], &[0, 0]]);
        assert!(!is_derivation(&e2, &d).unwrap());
        let z = Msc::zero(qf(), 2);
        assert!(is_derivation(&z, &LinMap::from_i64(qf(), &[&[3, -1], &[2, 7]])).unwrap());
        assert!(is_derivation(&z, &LinMap::zero(qf(), 3)).is_err());
    }

    #[test]
    fn report_shape() {
        let s0 = Msc::from_i64(qf(), &[&[0, 0, 1, 0], &[0, 0, 1, 0]]).unwrap();
        let r = derivation_report(&s0);
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"trivial":true,"dim":0,"basis":[],"rank_MA":4}"#
        );
    }
}
