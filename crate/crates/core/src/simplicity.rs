//! Simplicity via invariant subspaces of the multiplication operators.
//!
//! A subspace is a two-sided ideal iff it is invariant under every left
//! operator `A_i` and every right operator `A^o_i`, so the algebra is simple
//! iff this system of `2n` matrices has no invariant subspace other than
//! `0` and `F^n`.

use serde::Serialize;

use crate::algebra::{LinMap, Msc};
use crate::field::{FieldSpec, Poly, Scalar};
use crate::linalg::{Mat, Subspace, Vector};

/// Default cap on projective points scanned over GF(p).
pub const DEFAULT_POINT_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSystem {
    /// Left operators `A_1..A_n` followed by right operators `A^o_1..A^o_n`.
    pub ops: Vec<LinMap>,
    pub n: usize,
    pub field: FieldSpec,
}

impl OperatorSystem {
    pub fn of(a: &Msc) -> Self {
        let mut ops = a.left_operators();
        ops.extend(a.right_operators());
        OperatorSystem {
            ops,
            n: a.dim(),
            field: a.field(),
        }
    }

    pub fn transposed(&self) -> Self {
        OperatorSystem {
            ops: self
                .ops
                .iter()
                .map(|t| LinMap::new(t.transpose()).expect("square"))
                .collect(),
            n: self.n,
            field: self.field,
        }
    }

    pub fn is_invariant(&self, w: &Subspace) -> bool {
        self.ops.iter().all(|t| {
            w.basis()
                .iter()
                .all(|v| w.contains(&t.mul_vec(v).expect("dimensions agree")))
        })
    }

    /// Smallest invariant subspace containing `w`.
    pub fn saturate(&self, w: &Subspace) -> Subspace {
        let mut cur = w.clone();
        loop {
            let mut vectors: Vec<Vector> = cur.basis().to_vec();
            for t in &self.ops {
                for v in cur.basis() {
                    vectors.push(t.mul_vec(v).expect("dimensions agree"));
                }
            }
            let next = Subspace::span(self.field, self.n, &vectors);
            if next.dim() == cur.dim() {
                return cur;
            }
            cur = next;
        }
    }

    /// Largest invariant subspace contained in `e`.
    pub fn largest_invariant_within(&self, e: &Subspace) -> Subspace {
        let mut cur = e.clone();
        loop {
            if cur.is_zero() {
                return cur;
            }
            let ann = cur.annihilator();
            if ann.is_zero() {
                return cur;
            }
            let b = cur.as_columns();
            let n_rows = Mat::from_rows(self.field, ann.basis().to_vec()).expect("rows");
            let blocks: Vec<Mat> = self
                .ops
                .iter()
                .map(|t| n_rows.mul(&t.mul(&b).expect("dims")).expect("dims"))
                .collect();
            let stacked = Mat::vstack(self.field, &blocks).expect("equal widths");
            let coeffs = stacked.kernel_basis();
            let vectors: Vec<Vector> = coeffs
                .basis()
                .iter()
                .map(|c| b.mul_vec(c).expect("dims"))
                .collect();
            let next = Subspace::span(self.field, self.n, &vectors);
            if next.dim() == cur.dim() {
                return cur;
            }
            cur = next;
        }
    }
}

/// Smallest subspace containing `v` that is invariant under all left and
/// right multiplication operators of `a`.
pub fn closure(a: &Msc, v: &[Scalar]) -> Subspace {
    let sys = OperatorSystem::of(a);
    sys.saturate(&Subspace::span(a.field(), a.dim(), &[v.to_vec()]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SimplicityMethod {
    ProjectiveScan,
    EigenlineSearch,
    CandidateClosures,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplicityStatus {
    Simple,
    NotSimple(Subspace),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityVerdict {
    pub status: SimplicityStatus,
    pub method: SimplicityMethod,
    pub note: Option<String>,
}

impl SimplicityVerdict {
    pub fn is_simple(&self) -> bool {
        self.status == SimplicityStatus::Simple
    }

    pub fn status_name(&self) -> &'static str {
        match self.status {
            SimplicityStatus::Simple => "Simple",
            SimplicityStatus::NotSimple(_) => "NotSimple",
            SimplicityStatus::Unknown => "Unknown",
        }
    }

    pub fn report(&self) -> SimplicityReport {
        SimplicityReport {
            status: self.status_name().to_string(),
            certificate: match &self.status {
                SimplicityStatus::NotSimple(w) => Some(w.to_strings()),
                _ => None,
            },
            method: self.method,
            note: self.note.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicityReport {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<Vec<String>>>,
    pub method: SimplicityMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn verdict(status: SimplicityStatus, method: SimplicityMethod) -> SimplicityVerdict {
    SimplicityVerdict {
        status,
        method,
        note: None,
    }
}

fn not_simple(sys: &OperatorSystem, w: Subspace, method: SimplicityMethod) -> SimplicityVerdict {
    assert!(
        !w.is_zero() && !w.is_full() && sys.is_invariant(&w),
        "certificate must be a proper invariant subspace"
    );
    verdict(SimplicityStatus::NotSimple(w), method)
}

/// Number of lines in `GF(p)^n`, saturating.
pub fn projective_points(n: usize, p: u64) -> u128 {
    let q = p as u128;
    (q.saturating_pow(n as u32) - 1) / (q - 1)
}

/// Canonical line representatives: first nonzero coordinate equal to 1,
/// ordered by the position of that coordinate, then lexicographically.
fn projective_representatives(n: usize, field: FieldSpec) -> impl Iterator<Item = Vector> {
    let p = field.order().expect("finite field");
    (0..n).flat_map(move |lead| {
        let tail = n - lead - 1;
        (0..p.pow(tail as u32)).map(move |code| {
            let mut v = vec![field.zero(); n];
            v[lead] = field.one();
            let mut c = code;
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = field.residue(c % p);
                c /= p;
            }
            v
        })
    })
}

fn standard_basis(n: usize, field: FieldSpec) -> Vec<Vector> {
    Mat::identity(field, n).row_vectors()
}

pub fn projective_scan(a: &Msc) -> SimplicityVerdict {
    let sys = OperatorSystem::of(a);
    for v in projective_representatives(a.dim(), a.field()) {
        let w = sys.saturate(&Subspace::span(a.field(), a.dim(), &[v]));
        if !w.is_full() {
            return not_simple(&sys, w, SimplicityMethod::ProjectiveScan);
        }
    }
    verdict(SimplicityStatus::Simple, SimplicityMethod::ProjectiveScan)
}

/// `det(tI - T)` via sums of principal minors.
pub fn characteristic_polynomial(t: &Mat) -> Poly {
    let n = t.rows();
    let field = t.field();
    let mut coeffs = vec![field.zero(); n + 1];
    coeffs[n] = field.one();
    for k in 1..=n {
        let mut sum = field.zero();
        for subset in subsets(n, k) {
            let mut m = Mat::zeros(field, k, k);
            for (r, &i) in subset.iter().enumerate() {
                for (c, &j) in subset.iter().enumerate() {
                    m.set(r, c, t.get(i, j).clone());
                }
            }
            sum = &sum + &m.det().expect("square");
        }
        coeffs[n - k] = if k % 2 == 0 { sum } else { -&sum };
    }
    Poly::new(field, coeffs)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// A nonzero invariant subspace containing an eigenvector of some operator,
/// or `None` when no operator eigenvector lies in an invariant subspace.
fn invariant_through_eigenvectors(sys: &OperatorSystem) -> Option<Subspace> {
    let Some(t) = sys.ops.iter().find(|t| !t.is_scalar()) else {
        return Some(Subspace::span(
            sys.field,
            sys.n,
            &[standard_basis(sys.n, sys.field).remove(0)],
        ));
    };
    let roots = characteristic_polynomial(t)
        .roots()
        .expect("characteristic polynomial is monic");
    for lambda in roots {
        let shifted = t
            .sub(&Mat::identity(sys.field, sys.n).scale(&lambda))
            .expect("square");
        let eigenspace = shifted.kernel_basis();
        let w = sys.largest_invariant_within(&eigenspace);
        if !w.is_zero() {
            return Some(w);
        }
    }
    None
}

/// Complete for `n <= 3`: a proper invariant subspace of dimension 1 is a
/// common eigenline, one of dimension `n - 1` has a common eigenline of the
/// transposed system as its annihilator.
pub fn eigenline_search(a: &Msc) -> SimplicityVerdict {
    let sys = OperatorSystem::of(a);
    let method = SimplicityMethod::EigenlineSearch;
    for e in standard_basis(a.dim(), a.field()) {
        let w = sys.saturate(&Subspace::span(a.field(), a.dim(), &[e]));
        if !w.is_full() {
            return not_simple(&sys, w, method);
        }
    }
    if let Some(w) = invariant_through_eigenvectors(&sys) {
        if !w.is_full() {
            return not_simple(&sys, w, method);
        }
    }
    if let Some(w) = invariant_through_eigenvectors(&sys.transposed()) {
        let ann = w.annihilator();
        if !ann.is_zero() {
            return not_simple(&sys, ann, method);
        }
    }
    if a.dim() <= 3 {
        verdict(SimplicityStatus::Simple, method)
    } else {
        verdict(SimplicityStatus::Unknown, method)
    }
}

/// Closures of `e_i` and `e_i + e_j`; sound but incomplete.
pub fn candidate_closures(a: &Msc) -> SimplicityVerdict {
    let sys = OperatorSystem::of(a);
    let n = a.dim();
    let field = a.field();
    let basis = standard_basis(n, field);
    let mut candidates = basis.clone();
    for i in 0..n {
        for j in i + 1..n {
            candidates.push(basis[i].iter().zip(&basis[j]).map(|(x, y)| x + y).collect());
        }
    }
    for v in candidates {
        let w = sys.saturate(&Subspace::span(field, n, &[v]));
        if !w.is_full() {
            return not_simple(&sys, w, SimplicityMethod::CandidateClosures);
        }
    }
    verdict(SimplicityStatus::Unknown, SimplicityMethod::CandidateClosures)
}

pub fn decide_simple(a: &Msc) -> SimplicityVerdict {
    decide_simple_with_budget(a, DEFAULT_POINT_BUDGET)
}

pub fn decide_simple_with_budget(a: &Msc, budget: u128) -> SimplicityVerdict {
    let n = a.dim();
    if n == 1 {
        // F^1 has no proper nonzero subspace, whatever the product is.
        return SimplicityVerdict {
            status: SimplicityStatus::Simple,
            method: SimplicityMethod::EigenlineSearch,
            note: Some(
                "n = 1: only trivial subspaces exist, reported Simple even for the zero product"
                    .into(),
            ),
        };
    }
    if let FieldSpec::Prime(p) = a.field() {
        if projective_points(n, p) <= budget {
            return projective_scan(a);
        }
    }
    if n <= 3 {
        return eigenline_search(a);
    }
    let v = candidate_closures(a);
    if v.status != SimplicityStatus::Unknown {
        return v;
    }
    let e = eigenline_search(a);
    if matches!(e.status, SimplicityStatus::NotSimple(_)) {
        return e;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn vecq(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| qf().from_i64(x)).collect()
    }

    fn s0(f: FieldSpec) -> Msc {
        Msc::from_i64(f, &[&[0, 0, 1, 0], &[0, 0, 1, 0]]).unwrap()
    }

    fn s1(f: FieldSpec) -> Msc {
        Msc::from_i64(f, &[&[0, 0, 1, 0], &[1, 0, 1, 0]]).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert!(closure(&s0(qf()), &vecq(&[0, 0])).is_zero());
        assert!(closure(&s1(qf()), &vecq(&[1, 0])).is_full());
        assert_eq!(
            closure(&s0(qf()), &vecq(&[1, 1])),
            Subspace::span(qf(), 2, &[vecq(&[1, 1])])
        );
    }

    #[test]
    fn decide_examples() {
        let z = decide_simple(&Msc::zero(qf(), 2));
        assert_eq!(
            z.status,
            SimplicityStatus::NotSimple(Subspace::span(qf(), 2, &[vecq(&[1, 0])]))
        );
        let gf2 = FieldSpec::prime(2).unwrap();
        assert!(decide_simple(&s1(qf())).is_simple());
        assert!(decide_simple(&s1(gf2)).is_simple());
        let v = decide_simple(&s0(qf()));
        assert_eq!(v.method, SimplicityMethod::EigenlineSearch);
        assert_eq!(
            v.status,
            SimplicityStatus::NotSimple(Subspace::span(qf(), 2, &[vecq(&[1, 1])]))
        );
        assert_eq!(
            decide_simple(&Msc::diagonal_idempotent(qf(), 2)).status,
            SimplicityStatus::NotSimple(Subspace::span(qf(), 2, &[vecq(&[1, 0])]))
        );
    }

    #[test]
    fn one_dimensional_convention() {
        let v = decide_simple(&Msc::zero(qf(), 1));
        assert!(v.is_simple());
        assert!(v.note.is_some());
    }

    #[test]
    fn characteristic_polynomial_of_companion() {
        // companion of t^3 - 2t^2 + 3t - 5
        let c = Mat::from_i64(qf(), &[&[0, 0, 5], &[1, 0, -3], &[0, 1, 2]]);
        assert_eq!(
            characteristic_polynomial(&c),
            Poly::from_i64(qf(), &[-5, 3, -2, 1])
        );
    }

    #[test]
    fn two_dimensional_ideal_in_three_dimensions() {
        // e1 e1 = e1, e2 e3 = e2: span{e2, e3} and span{e1} are ideals
        let mut m = Mat::zeros(qf(), 3, 9);
        m.set(0, 0, qf().one());
        m.set(1, 3 + 2, qf().one());
        let a = Msc::new(m).unwrap();
        let v = eigenline_search(&a);
        match &v.status {
            SimplicityStatus::NotSimple(w) => {
                assert!(OperatorSystem::of(&a).is_invariant(w));
            }
            other => panic!("expected NotSimple, got {other:?}"),
        }
    }

    #[test]
    fn report_json() {
        let r = decide_simple(&s0(qf())).report();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"status":"NotSimple","certificate":[["1","1"]],"method":"EigenlineSearch"}"#
        );
    }
}
