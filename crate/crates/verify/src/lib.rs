//! Acceptance criteria as runnable checks, each with its runtime limit.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use msc_core::automorphisms::{
    decide_trivial_aut, enumerate_automorphisms, is_automorphism, DEFAULT_BUDGET,
};
use msc_core::classify2d::audit::{audit_with_census, census};
use msc_core::classify2d::Property;
use msc_core::construct::{chain, seed2, ChainMode, ChainOptions, SeedParams};
use msc_core::derivations::{derivation_basis, derivation_system, is_derivation, is_trivial_der};
use msc_core::experiments::{density_scan, inclusion_scan, Samples, ScanOptions};
use msc_core::linalg::kron_vec;
use msc_core::simplicity::{
    decide_simple, eigenline_search, projective_scan, OperatorSystem, SimplicityStatus,
};
use msc_core::{FieldSpec, LinMap, Mat, Msc};

pub type Outcome = (bool, String);

fn q() -> FieldSpec {
    FieldSpec::Rationals
}

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn fields() -> [FieldSpec; 4] {
    [q(), gf(2), gf(3), gf(5)]
}

fn random_mat(field: FieldSpec, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Mat {
    let data = (0..rows * cols).map(|_| field.sample(rng, 3)).collect();
    Mat::from_vec(field, rows, cols, data).unwrap()
}

fn random_gl(field: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> LinMap {
    loop {
        let m = random_mat(field, n, n, rng);
        if !m.det().unwrap().is_zero() {
            return LinMap::new(m).unwrap();
        }
    }
}

fn permutation(field: FieldSpec, perm: &[usize]) -> LinMap {
    let n = perm.len();
    let mut m = Mat::zeros(field, n, n);
    for (j, &i) in perm.iter().enumerate() {
        m.set(i, j, field.one());
    }
    LinMap::new(m).unwrap()
}

/// Automorphism count of `e_i e_j = delta_ij e_i` over GF(p), found by
/// trying every n x n matrix on basis products.
fn brute_aut_count_idempotent(n: usize, p: u64) -> usize {
    let total = p.pow((n * n) as u32);
    let mut count = 0;
    for idx in 0..total {
        let mut g = vec![0u64; n * n];
        let mut r = idx;
        for slot in g.iter_mut() {
            *slot = r % p;
            r /= p;
        }
        // columns are images of basis vectors
        let col = |j: usize| -> Vec<u64> { (0..n).map(|i| g[i * n + j]).collect() };
        // (u v)_k = u_k v_k in this algebra
        let prod = |u: &[u64], v: &[u64]| -> Vec<u64> {
            u.iter().zip(v).map(|(x, y)| x * y % p).collect()
        };
        let hom = (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = if i == j { col(i) } else { vec![0; n] };
                lhs == prod(&col(i), &col(j))
            })
        });
        if hom {
            let m = Mat::from_vec(
                gf(p),
                n,
                n,
                g.iter().map(|&x| gf(p).residue(x)).collect(),
            )
            .unwrap();
            if !m.det().unwrap().is_zero() {
                count += 1;
            }
        }
    }
    count
}

fn criterion1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut cases = 0;
    for field in fields() {
        for n in 2..=5 {
            let a = Msc::diagonal_idempotent(field, n);
            let sys = derivation_system(&a);
            if !derivation_basis(&a).is_empty() || !is_trivial_der(&a) {
                return (false, format!("nonzero derivation for E_{n} over {field}"));
            }
            // the two routes must agree on arbitrary maps, not only on 0
            for _ in 0..10 {
                let d = LinMap::new(random_mat(field, n, n, &mut rng)).unwrap();
                let vec_d = d.data().to_vec();
                let kernel = sys.m.mul_vec(&vec_d).unwrap().iter().all(|x| x.is_zero());
                if kernel != is_derivation(&a, &d).unwrap() {
                    return (false, format!("routes disagree for E_{n} over {field}"));
                }
            }
            let zero = LinMap::new(Mat::zeros(field, n, n)).unwrap();
            if !is_derivation(&a, &zero).unwrap() {
                return (false, "zero map rejected".into());
            }
            cases += 1;
        }
    }
    (true, format!("Der(E_n) = 0 in {cases} cases"))
}

fn criterion2() -> Outcome {
    for field in fields() {
        for n in 2..=5 {
            let a = Msc::diagonal_idempotent(field, n);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(0, 1);
            if !is_automorphism(&a, &permutation(field, &perm)).unwrap() {
                return (false, format!("swap is not an automorphism of E_{n} over {field}"));
            }
        }
    }
    let mut detail = Vec::new();
    for p in [2u64, 3] {
        for n in [2usize, 3] {
            let a = Msc::diagonal_idempotent(gf(p), n);
            let got = enumerate_automorphisms(&a, DEFAULT_BUDGET).unwrap().len();
            let oracle = brute_aut_count_idempotent(n, p);
            let fact: usize = (1..=n).product();
            detail.push(format!("GF({p}) n={n}: {got}"));
            if got != oracle || got != fact {
                return (
                    false,
                    format!("GF({p}) n={n}: enumerated {got}, oracle {oracle}, n! = {fact}"),
                );
            }
        }
    }
    (true, format!("|Aut| = n!: {}", detail.join(", ")))
}

fn criterion3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for field in fields() {
        for _ in 0..50 {
            let c = SeedParams::sample(field, &mut rng, 5);
            let a = seed2(&c, field).unwrap();
            if !is_trivial_der(&a) {
                return (false, format!("seed2({c:?}) over {field} has nonzero Der"));
            }
            if field.is_finite() {
                let auts = enumerate_automorphisms(&a, DEFAULT_BUDGET).unwrap();
                if auts.len() != 1 || !auts[0].is_identity() {
                    return (false, format!("seed2({c:?}) over {field}: |Aut| = {}", auts.len()));
                }
            }
        }
    }
    (true, "200 seeds: Der = 0; Aut = {I} over GF(2), GF(3), GF(5)".into())
}

fn criterion4() -> Outcome {
    let mut notes = Vec::new();
    for field in [q(), gf(5)] {
        let c = SeedParams::from_i64(field, [0, 0, 0, 0]);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let stages = match chain(&c, field, 4, ChainMode::TrivialOnly, &mut rng, &ChainOptions::default()) {
            Ok(s) => s,
            Err(e) => return (false, format!("chain over {field}: {e}")),
        };
        if stages.last().map(|s| s.n) != Some(4) {
            return (false, format!("chain over {field} stopped early"));
        }
        for s in &stages {
            if !is_trivial_der(&s.algebra) {
                return (false, format!("stage n={} over {field} has nonzero Der", s.n));
            }
        }
        if field.is_finite() {
            let s3 = &stages[1].algebra;
            let v = decide_trivial_aut(s3, DEFAULT_BUDGET);
            if !v.is_trivial() || v.order != Some(1) {
                return (false, format!("GF(5) n=3 stage: Aut order {:?}", v.order));
            }
            notes.push("GF(5) n=3 Aut = {I} over 1488000 maps".to_string());
        }
        notes.push(format!("{field}: n=2..4 Der = 0"));
    }
    (true, notes.join("; "))
}

fn criterion5() -> Outcome {
    for field in [q(), gf(5)] {
        let c = SeedParams::from_i64(field, [0, 0, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let stages = match chain(&c, field, 3, ChainMode::SimpleToo, &mut rng, &ChainOptions::default()) {
            Ok(s) => s,
            Err(e) => return (false, format!("chain over {field}: {e}")),
        };
        let a = &stages.last().unwrap().algebra;
        let v = if field.is_finite() {
            projective_scan(a)
        } else {
            eigenline_search(a)
        };
        if a.dim() != 3 || !v.is_simple() {
            return (false, format!("n=3 stage over {field}: {}", v.status_name()));
        }
    }
    (true, "n=3 Simple (EigenlineSearch over Q, ProjectiveScan over GF(5))".into())
}

fn criterion6() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [2u64, 3] {
        let field = gf(p);
        let verdicts = census(field, DEFAULT_BUDGET).unwrap();
        for prop in [Property::TrivDer, Property::TrivAut, Property::Simple] {
            let r = audit_with_census(field, prop, &verdicts).unwrap();
            ok &= r.passed();
            parts.push(format!(
                "GF({p}) {}: sound={} complete={} unique={} violations={}",
                prop.cli_name(),
                r.sound,
                r.complete,
                r.unique,
                r.violation_count
            ));
        }
    }
    (ok, parts.join("; "))
}

fn criterion7() -> Outcome {
    let opts = ScanOptions::default();
    let r5 = inclusion_scan(gf(5), Samples::Count(50_000), 1, &opts).unwrap();
    let mut ok = r5.aut_not_der_count == 0 && r5.inclusion_holds;
    let mut parts = vec![format!("GF(5) 50000 samples: aut_not_der={}", r5.aut_not_der_count)];
    for p in [2u64, 3] {
        let r = inclusion_scan(gf(p), Samples::Exhaustive, 0, &opts).unwrap();
        let matched = r.aut_not_der.matches_table && r.der_not_aut.matches_table;
        ok &= matched;
        parts.push(format!(
            "GF({p}) exhaustive: aut_not_der={} (matches={}) der_not_aut={} (matches={})",
            r.aut_not_der_count,
            r.aut_not_der.matches_table,
            r.der_not_aut_count,
            r.der_not_aut.matches_table
        ));
    }
    (ok, parts.join("; "))
}

fn criterion8() -> Outcome {
    let opts = ScanOptions::default();
    let r = density_scan(gf(101), 2, Samples::Count(10_000), 42, &opts).unwrap();
    let floor = r.fractions.trivial_der >= 0.9 && r.fractions.simple >= 0.9;
    let ex = density_scan(gf(2), 2, Samples::Exhaustive, 0, &opts).unwrap();
    let verdicts = census(gf(2), DEFAULT_BUDGET).unwrap();
    let holding = |prop| audit_with_census(gf(2), prop, &verdicts).unwrap().holding;
    let same = ex.counts.trivial_der == holding(Property::TrivDer)
        && ex.counts.trivial_aut == Some(holding(Property::TrivAut))
        && ex.counts.simple == holding(Property::Simple);
    (
        floor && same,
        format!(
            "GF(101): trivial_der={:.4} simple={:.4}; GF(2) exhaustive counts der={} aut={:?} simple={} equal audit={}",
            r.fractions.trivial_der,
            r.fractions.simple,
            ex.counts.trivial_der,
            ex.counts.trivial_aut,
            ex.counts.simple,
            same
        ),
    )
}

/// Sparse random MSC, so that the pool contains algebras with nonzero
/// derivations, nontrivial automorphisms and proper ideals.
fn sparse_msc(field: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Msc {
    let data = (0..n * n * n)
        .map(|_| {
            if rng.random_bool(0.6) {
                field.zero()
            } else {
                field.sample(rng, 2)
            }
        })
        .collect();
    Msc::new(Mat::from_vec(field, n, n * n, data).unwrap()).unwrap()
}

fn invariants(a: &Msc) -> Result<(usize, usize, &'static str), String> {
    let der = derivation_basis(a);
    for d1 in &der {
        for d2 in &der {
            if !is_derivation(a, &d1.commutator(d2).unwrap()).unwrap() {
                return Err("Der basis not closed under brackets".into());
            }
        }
    }
    let auts = enumerate_automorphisms(a, DEFAULT_BUDGET).unwrap();
    let set: std::collections::HashSet<&LinMap> = auts.iter().collect();
    if !auts.iter().any(|g| g.is_identity()) {
        return Err("identity missing from Aut".into());
    }
    for g in &auts {
        if !set.contains(&g.inverse().unwrap()) {
            return Err("Aut not closed under inverses".into());
        }
        for h in &auts {
            if !set.contains(&g.compose(h).unwrap()) {
                return Err("Aut not closed under composition".into());
            }
        }
    }
    let v = decide_simple(a);
    if let SimplicityStatus::NotSimple(w) = &v.status {
        if w.is_zero() || w.is_full() || !OperatorSystem::of(a).is_invariant(w) {
            return Err("unsound NotSimple certificate".into());
        }
    }
    Ok((der.len(), auts.len(), v.status_name()))
}

fn criterion9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut conjugations = 0;
    for k in 0..50 {
        let (field, n) = if k % 2 == 0 { (gf(3), 2) } else { (gf(2), 3) };
        let a = match k {
            0 => Msc::zero(field, n),
            1 => Msc::diagonal_idempotent(field, n),
            _ => sparse_msc(field, n, &mut rng),
        };
        let base = match invariants(&a) {
            Ok(v) => v,
            Err(e) => return (false, format!("pool algebra {k}: {e}")),
        };
        for _ in 0..100 {
            let g = random_gl(field, n, &mut rng);
            let b = a.change_basis(&g).unwrap();
            match invariants(&b) {
                Ok(v) if v == base => conjugations += 1,
                Ok(v) => return (false, format!("pool algebra {k}: {base:?} became {v:?}")),
                Err(e) => return (false, format!("pool algebra {k} conjugate: {e}")),
            }
        }
    }
    for field in [q(), gf(5)] {
        for _ in 0..200 {
            let (r1, c1, r2, c2) = (
                rng.random_range(1..4),
                rng.random_range(1..4),
                rng.random_range(1..4),
                rng.random_range(1..4),
            );
            let b = random_mat(field, r1, c1, &mut rng);
            let c = random_mat(field, r2, c2, &mut rng);
            let x: Vec<_> = (0..c1).map(|_| field.sample(&mut rng, 5)).collect();
            let y: Vec<_> = (0..c2).map(|_| field.sample(&mut rng, 5)).collect();
            let lhs = b.kronecker(&c).unwrap().mul_vec(&kron_vec(&x, &y)).unwrap();
            let rhs = kron_vec(&b.mul_vec(&x).unwrap(), &c.mul_vec(&y).unwrap());
            if lhs != rhs {
                return (false, format!("Kronecker identity fails over {field}"));
            }
        }
    }
    (
        true,
        format!("{conjugations} conjugates invariant; Lie, group, certificate and Kronecker checks hold"),
    )
}

pub struct Criterion {
    pub id: u32,
    pub run: fn() -> Outcome,
    pub limit: Duration,
}

pub fn criteria() -> [Criterion; 9] {
    let c = |id, run, secs| Criterion {
        id,
        run,
        limit: Duration::from_secs(secs),
    };
    [
        c(1, criterion1, 5),
        c(2, criterion2, 60),
        c(3, criterion3, 30),
        c(4, criterion4, 600),
        c(5, criterion5, 60),
        c(6, criterion6, 900),
        c(7, criterion7, 600),
        c(8, criterion8, 300),
        c(9, criterion9, 120),
    ]
}

/// Runs one criterion; passes only if the check holds within the limit.
pub fn evaluate(c: &Criterion) -> (bool, Duration, String) {
    let start = Instant::now();
    let (ok, detail) = (c.run)();
    let took = start.elapsed();
    (ok && took <= c.limit, took, detail)
}
