//! Automorphisms and isomorphisms.
//!
//! Over GF(p) both are decided exhaustively by scanning GL(n, p). Over Q the
//! defining system `gA = A(g ⊗ g)` is quadratic and only a bounded witness
//! search is attempted; absence of a witness is reported as `Unknown`.

use serde::Serialize;

use crate::algebra::{LinMap, Msc};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Mat;
use crate::smallfield::{check_budget, gl_order, prime_of, scan_gl, small_to_linmap, SmallMsc};

/// Default cap on the number of group elements scanned.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Cap on candidate maps tried by the witness search.
const WITNESS_ATTEMPTS: usize = 50_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutStatus {
    Trivial,
    NonTrivial(LinMap),
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AutMethod {
    Exhaustive,
    WitnessOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutVerdict {
    pub status: AutStatus,
    pub method: AutMethod,
    /// `|Aut(A)|`, known only after an exhaustive scan.
    pub order: Option<usize>,
}

impl AutVerdict {
    pub fn is_trivial(&self) -> bool {
        self.status == AutStatus::Trivial
    }

    pub fn report(&self) -> AutReport {
        let (status, witness) = match &self.status {
            AutStatus::Trivial => ("Trivial", None),
            AutStatus::NonTrivial(g) => ("NonTrivial", Some(g.to_strings())),
            AutStatus::Unknown => ("Unknown", None),
        };
        AutReport {
            status: status.to_string(),
            order: self.order,
            witness,
            method: self.method,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutReport {
    pub status: String,
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<String>>>,
    pub method: AutMethod,
}

fn check_map(a: &Msc, g: &LinMap) -> Result<()> {
    if g.dim() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} map for a {}-dimensional algebra",
            g.dim(),
            g.dim(),
            a.dim()
        )));
    }
    Ok(())
}

/// `det(g) != 0` and `gA = A(g ⊗ g)`.
pub fn is_automorphism(a: &Msc, g: &LinMap) -> Result<bool> {
    check_map(a, g)?;
    if g.det()?.is_zero() {
        return Ok(false);
    }
    let lhs = g.mul(a.entries())?;
    let rhs = a.entries().mul(&g.kronecker(g)?)?;
    Ok(lhs == rhs)
}

/// `tr(A_i) = sum_j tr(A_j) g_ji` for every `i`; necessary for `g` in Aut(A).
pub fn trace_relation_holds(a: &Msc, g: &LinMap) -> bool {
    let tr = a.trace_vector();
    let field = a.field();
    (0..a.dim()).all(|i| {
        let rhs = (0..a.dim()).fold(field.zero(), |acc, j| &acc + &(&tr[j] * g.get(j, i)));
        rhs == tr[i]
    })
}

/// Every automorphism of `a` over GF(p), lexicographic in the entries of `g`.
pub fn enumerate_automorphisms(a: &Msc, budget: u128) -> Result<Vec<LinMap>> {
    let p = prime_of(a.field())?;
    let n = a.dim();
    check_budget(gl_order(n, p as u64), budget)?;
    let small = SmallMsc::from_msc(a)?;
    Ok(scan_gl(n, p, |g| small.preserved_by(g))
        .iter()
        .map(|g| small_to_linmap(g, n, p))
        .collect())
}

pub fn decide_trivial_aut(a: &Msc, budget: u128) -> AutVerdict {
    if let FieldSpec::Prime(p) = a.field() {
        if gl_order(a.dim(), p) <= budget {
            let auts = enumerate_automorphisms(a, budget).expect("finite field within budget");
            let order = auts.len();
            let status = match auts.into_iter().find(|g| !g.is_identity()) {
                Some(g) => AutStatus::NonTrivial(g),
                None => AutStatus::Trivial,
            };
            return AutVerdict {
                status,
                method: AutMethod::Exhaustive,
                order: Some(order),
            };
        }
    }
    let status = match find_witness(a) {
        Some(g) => AutStatus::NonTrivial(g),
        None => AutStatus::Unknown,
    };
    AutVerdict {
        status,
        method: AutMethod::WitnessOnly,
        order: None,
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Bounded search for a non-identity automorphism: scaled permutation
/// matrices, unipotent maps fixing `e_1` in the first row, then all maps
/// with entries in `{-1, 0, 1}` for small `n`.
fn find_witness(a: &Msc) -> Option<LinMap> {
    let n = a.dim();
    let field = a.field();
    let mut attempts = 0usize;
    let mut try_map = |m: Mat| -> Option<LinMap> {
        attempts += 1;
        if attempts > WITNESS_ATTEMPTS || m.is_identity() {
            return None;
        }
        let g = LinMap::new(m).ok()?;
        if trace_relation_holds(a, &g) && is_automorphism(a, &g).unwrap_or(false) {
            Some(g)
        } else {
            None
        }
    };

    let mut scales: Vec<Scalar> = vec![field.one(), field.from_i64(-1), field.from_i64(2)];
    scales.push(field.from_i64(-2));
    if let Ok(half) = field.from_ratio(1, 2) {
        scales.push(half.clone());
        scales.push(-&half);
    }
    scales.dedup();
    scales.retain(|s| !s.is_zero());

    if n <= 6 {
        for perm in permutations(n) {
            let total = scales.len().pow(n as u32);
            for code in 0..total {
                let mut m = Mat::zeros(field, n, n);
                let mut c = code;
                for (col, &row) in perm.iter().enumerate() {
                    m.set(row, col, scales[c % scales.len()].clone());
                    c /= scales.len();
                }
                if let Some(g) = try_map(m) {
                    return Some(g);
                }
            }
        }
    }

    let small = [field.from_i64(-1), field.zero(), field.one()];
    // unipotent: identity plus one off-diagonal entry in the first column
    for row in 1..n {
        for s in [&small[0], &small[2]] {
            let mut m = Mat::identity(field, n);
            m.set(row, 0, s.clone());
            if let Some(g) = try_map(m) {
                return Some(g);
            }
        }
    }
    if n <= 3 {
        let total = 3usize.pow((n * n) as u32);
        for code in 0..total {
            let mut c = code;
            let data = (0..n * n)
                .map(|_| {
                    let v = small[c % 3].clone();
                    c /= 3;
                    v
                })
                .collect();
            let m = Mat::from_vec(field, n, n, data).expect("shape");
            if let Some(g) = try_map(m) {
                return Some(g);
            }
        }
    }
    None
}

/// Some `g` with `change_basis(a, g) == b`, by exhaustive scan over GL(n, p).
pub fn are_isomorphic(a: &Msc, b: &Msc, budget: u128) -> Result<Option<LinMap>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "dimensions {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch {
            expected: a.field().to_string(),
            found: b.field().to_string(),
        });
    }
    let p = prime_of(a.field())?;
    let n = a.dim();
    check_budget(gl_order(n, p as u64), budget)?;
    let sa = SmallMsc::from_msc(a)?;
    let sb = SmallMsc::from_msc(b)?;
    // change_basis(A, g) = B  <=>  gA = B(g ⊗ g)
    Ok(scan_gl(n, p, |g| sa.maps_to(&sb, g))
        .first()
        .map(|g| small_to_linmap(g, n, p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn swap(field: FieldSpec) -> LinMap {
        LinMap::from_i64(field, &[&[0, 1], &[1, 0]])
    }

    #[test]
    fn is_automorphism_examples() {
        let q = FieldSpec::Rationals;
        let s0 = Msc::from_i64(q, &[&[0, 0, 1, 0], &[0, 0, 1, 0]]).unwrap();
        assert!(is_automorphism(&s0, &LinMap::identity(q, 2)).unwrap());
        let e2 = Msc::diagonal_idempotent(gf(2), 2);
        assert!(is_automorphism(&e2, &swap(gf(2))).unwrap());
        let s0_5 = Msc::from_i64(gf(5), &[&[0, 0, 1, 0], &[0, 0, 1, 0]]).unwrap();
        for g in crate::smallfield::GlGroup::new(2, 5).elements {
            let g = small_to_linmap(&g, 2, 5);
            assert_eq!(is_automorphism(&s0_5, &g).unwrap(), g.is_identity());
        }
        assert!(!is_automorphism(&e2, &LinMap::zero(gf(2), 2)).unwrap());
    }

    #[test]
    fn enumerate_examples() {
        let e2 = Msc::diagonal_idempotent(gf(2), 2);
        let auts = enumerate_automorphisms(&e2, DEFAULT_BUDGET).unwrap();
        assert_eq!(auts, vec![swap(gf(2)), LinMap::identity(gf(2), 2)]);
        let s0 = Msc::from_i64(gf(2), &[&[0, 0, 1, 0], &[0, 0, 1, 0]]).unwrap();
        assert_eq!(
            enumerate_automorphisms(&s0, DEFAULT_BUDGET).unwrap(),
            vec![LinMap::identity(gf(2), 2)]
        );
        assert_eq!(
            enumerate_automorphisms(&Msc::zero(gf(2), 2), DEFAULT_BUDGET)
                .unwrap()
                .len(),
            6
        );
        assert_eq!(
            enumerate_automorphisms(&e2, 5),
            Err(Error::BudgetExceeded {
                required: 6,
                budget: 5
            })
        );
        let q = Msc::diagonal_idempotent(FieldSpec::Rationals, 2);
        assert_eq!(
            enumerate_automorphisms(&q, DEFAULT_BUDGET),
            Err(Error::NotFiniteField)
        );
    }

    #[test]
    fn decide_examples() {
        let v = decide_trivial_aut(&Msc::diagonal_idempotent(gf(3), 2), DEFAULT_BUDGET);
        assert_eq!(v.status, AutStatus::NonTrivial(swap(gf(3))));
        assert_eq!(v.method, AutMethod::Exhaustive);
        let q = FieldSpec::Rationals;
        let v = decide_trivial_aut(&Msc::diagonal_idempotent(q, 2), DEFAULT_BUDGET);
        assert_eq!(v.status, AutStatus::NonTrivial(swap(q)));
        assert_eq!(v.method, AutMethod::WitnessOnly);
        let s0 = Msc::from_i64(q, &[&[0, 0, 1, 0], &[0, 0, 1, 0]]).unwrap();
        assert_eq!(decide_trivial_aut(&s0, DEFAULT_BUDGET).status, AutStatus::Unknown);
    }

    #[test]
    fn isomorphism_examples() {
        let e2 = Msc::diagonal_idempotent(gf(2), 2);
        assert_eq!(
            are_isomorphic(&e2, &Msc::zero(gf(2), 2), DEFAULT_BUDGET).unwrap(),
            None
        );
        let w = are_isomorphic(&e2, &e2, DEFAULT_BUDGET).unwrap().unwrap();
        assert!(w.is_identity() || w == swap(gf(2)));
        let a = Msc::from_i64(gf(3), &[&[1, 2, 0, 1], &[0, 1, 2, 2]]).unwrap();
        let g = LinMap::from_i64(gf(3), &[&[1, 1], &[0, 2]]);
        let b = a.change_basis(&g).unwrap();
        let h = are_isomorphic(&a, &b, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(a.change_basis(&h).unwrap(), b);
    }

    #[test]
    fn report_json() {
        let v = decide_trivial_aut(&Msc::diagonal_idempotent(gf(2), 2), DEFAULT_BUDGET);
        assert_eq!(
            serde_json::to_string(&v.report()).unwrap(),
            r#"{"status":"NonTrivial","order":2,"witness":[["0","1"],["1","0"]],"method":"Exhaustive"}"#
        );
    }
}
