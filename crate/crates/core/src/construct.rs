//! Inductive extension of an `(n-1)`-dimensional algebra `A' = (A'_2|...|A'_n)`
//! to an `n`-dimensional one `A = (A_1|A_2|...|A_n)` with
//!
//! ```text
//! A_i = [ -tr(A'_i)   0    ]      i = 2..n
//!       [  abar_i    A'_i  ]
//! ```
//!
//! and a free first block `A_1`. With `tr(A_1) != 0` and the stacked blocks
//! `A'_i + tr(A'_i) I` of full column rank, trivial derivations (resp.
//! trivial automorphisms) of `A'` carry over to `A`. If `A'` is simple, the
//! stacked `(abar_i | A'_i + tr(A'_i) I)` has rank `n`, and the first row of
//! `A_1` off the corner is nonzero, `A` is simple.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{LinMap, Msc, MscJson};
use crate::automorphisms::{decide_trivial_aut, AutStatus};
use crate::derivations::is_trivial_der;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Mat, Vector};
use crate::simplicity::{decide_simple, SimplicityStatus};
use crate::smallfield::gl_order;

/// `c = (alpha_1, alpha_2, alpha_4, beta_1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedParams {
    pub alpha1: Scalar,
    pub alpha2: Scalar,
    pub alpha4: Scalar,
    pub beta1: Scalar,
}

impl SeedParams {
    pub fn from_i64(field: FieldSpec, c: [i64; 4]) -> Self {
        SeedParams {
            alpha1: field.from_i64(c[0]),
            alpha2: field.from_i64(c[1]),
            alpha4: field.from_i64(c[2]),
            beta1: field.from_i64(c[3]),
        }
    }

    pub fn sample<R: Rng + ?Sized>(field: FieldSpec, rng: &mut R, bound: u64) -> Self {
        SeedParams {
            alpha1: field.sample(rng, bound),
            alpha2: field.sample(rng, bound),
            alpha4: field.sample(rng, bound),
            beta1: field.sample(rng, bound),
        }
    }
}

/// `[[a1, a2, 1+a2, a4], [b1, -a1, 1-a1, -a2]]`
pub fn seed2(c: &SeedParams, field: FieldSpec) -> Result<Msc> {
    for s in [&c.alpha1, &c.alpha2, &c.alpha4, &c.beta1] {
        if !field.contains(s) {
            return Err(Error::FieldMismatch {
                expected: field.to_string(),
                found: s.field().to_string(),
            });
        }
    }
    let one = field.one();
    let row0 = vec![
        c.alpha1.clone(),
        c.alpha2.clone(),
        &one + &c.alpha2,
        c.alpha4.clone(),
    ];
    let row1 = vec![
        c.beta1.clone(),
        -&c.alpha1,
        &one - &c.alpha1,
        -&c.alpha2,
    ];
    Msc::new(Mat::from_rows(field, vec![row0, row1])?)
}

/// Free data of one extension step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionParams {
    /// New `n x n` first block.
    pub a1: LinMap,
    /// `abar_i` for `i = 2..n`, each of length `n - 1`.
    pub abars: Vec<Vector>,
}

fn shifted_blocks(aprime: &Msc) -> Vec<Mat> {
    let id = Mat::identity(aprime.field(), aprime.dim());
    aprime
        .left_operators()
        .iter()
        .map(|b| b.add(&id.scale(&b.trace())).expect("same shape"))
        .collect()
}

/// Ranks of the stacked blocks `A'_i + tr(A'_i) I` and, when `abars` is
/// given, of the stacked `(abar_i | A'_i + tr(A'_i) I)`.
pub fn block_column_ranks(aprime: &Msc, abars: Option<&[Vector]>) -> Result<(usize, Option<usize>)> {
    let field = aprime.field();
    let m = aprime.dim();
    let blocks = shifted_blocks(aprime);
    let rank_bl = Mat::vstack(field, &blocks)?.rank();
    let rank_bl2 = match abars {
        None => None,
        Some(abars) => {
            check_abars(aprime, abars)?;
            let augmented = blocks
                .iter()
                .zip(abars)
                .map(|(b, a)| Mat::hstack(field, &[Mat::column(field, a), b.clone()]))
                .collect::<Result<Vec<_>>>()?;
            let r = Mat::vstack(field, &augmented)?.rank();
            debug_assert!(r <= m + 1);
            Some(r)
        }
    };
    Ok((rank_bl, rank_bl2))
}

fn check_abars(aprime: &Msc, abars: &[Vector]) -> Result<()> {
    let m = aprime.dim();
    if abars.len() != m || abars.iter().any(|v| v.len() != m) {
        return Err(Error::DimensionMismatch(format!(
            "expected {m} column vectors of length {m}"
        )));
    }
    Ok(())
}

/// Builds `A` from `A'` and the free parameters without checking hypotheses.
pub fn assemble(aprime: &Msc, params: &ExtensionParams) -> Result<Msc> {
    let field = aprime.field();
    let m = aprime.dim();
    let n = m + 1;
    check_abars(aprime, &params.abars)?;
    if params.a1.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "first block must be {n}x{n}, got {}x{}",
            params.a1.dim(),
            params.a1.dim()
        )));
    }
    let mut blocks = vec![params.a1.as_mat().clone()];
    for (bp, abar) in aprime.left_operators().iter().zip(&params.abars) {
        let mut b = Mat::zeros(field, n, n);
        b.set(0, 0, -&bp.trace());
        for (r, x) in abar.iter().enumerate().take(m) {
            b.set(r + 1, 0, x.clone());
            for c in 0..m {
                b.set(r + 1, c + 1, bp.get(r, c).clone());
            }
        }
        blocks.push(b);
    }
    Msc::from_left_operators(&blocks)
}

/// Extension preserving trivial derivations and trivial automorphisms.
pub fn extend_trivial(aprime: &Msc, params: &ExtensionParams) -> Result<Msc> {
    let m = aprime.dim();
    if params.a1.trace().is_zero() {
        return Err(Error::TraceConditionFailed);
    }
    let (rank, _) = block_column_ranks(aprime, None)?;
    if rank != m {
        return Err(Error::RankConditionFailed { rank, expected: m });
    }
    assemble(aprime, params)
}

/// Extension preserving simplicity.
pub fn extend_simple(aprime: &Msc, params: &ExtensionParams) -> Result<Msc> {
    let m = aprime.dim();
    if decide_simple(aprime).status != SimplicityStatus::Simple {
        return Err(Error::NotSimpleInput);
    }
    let (rank, rank2) = block_column_ranks(aprime, Some(&params.abars))?;
    if rank != m {
        return Err(Error::RankConditionFailed { rank, expected: m });
    }
    let rank2 = rank2.expect("abars supplied");
    if rank2 != m + 1 {
        return Err(Error::AugmentedRankFailed {
            rank: rank2,
            expected: m + 1,
        });
    }
    if params.a1.row(0)[1..].iter().all(Scalar::is_zero) {
        return Err(Error::FirstRowZero);
    }
    assemble(aprime, params)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChainMode {
    TrivialOnly,
    SimpleToo,
}

#[derive(Clone, Debug)]
pub struct ChainOptions {
    pub max_attempts: usize,
    /// Largest `|GL(n, p)|` scanned when checking automorphisms per stage.
    pub aut_budget: u128,
    /// Entry bound for random parameter draws over Q.
    pub sample_bound: u64,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions {
            max_attempts: 1000,
            aut_budget: crate::automorphisms::DEFAULT_BUDGET,
            sample_bound: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageChecks {
    pub trivial_der: bool,
    /// `"Trivial"`, `"NonTrivial"`, or `"conditional"` when no exhaustive
    /// scan was possible.
    pub aut: String,
    pub aut_guarantee: String,
    pub simple: String,
    /// Rank of the stacked shifted blocks; equal to `n` when the stage can
    /// be extended further.
    pub rank_bl: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub n: usize,
    pub msc: MscJson,
    pub checks: StageChecks,
    #[serde(skip)]
    pub algebra: Msc,
}

fn stage_checks(a: &Msc, opts: &ChainOptions, prev_aut_trivial: Option<bool>) -> StageChecks {
    let exhaustive = match a.field() {
        FieldSpec::Prime(p) => gl_order(a.dim(), p) <= opts.aut_budget,
        FieldSpec::Rationals => false,
    };
    let (aut, aut_guarantee) = if exhaustive {
        let v = decide_trivial_aut(a, opts.aut_budget);
        let s = match v.status {
            AutStatus::Trivial => "Trivial",
            AutStatus::NonTrivial(_) => "NonTrivial",
            AutStatus::Unknown => "Unknown",
        };
        (s.to_string(), "verified by exhaustive scan".to_string())
    } else {
        let g = match prev_aut_trivial {
            Some(true) => "implied by extension from a verified trivial-Aut stage",
            _ => "conditional on trivial Aut of the seed",
        };
        ("conditional".to_string(), g.to_string())
    };
    StageChecks {
        trivial_der: is_trivial_der(a),
        aut,
        aut_guarantee,
        simple: decide_simple(a).status_name().to_string(),
        rank_bl: block_column_ranks(a, None).map(|r| r.0).unwrap_or(0),
    }
}

fn unit_vector(field: FieldSpec, len: usize, i: usize) -> Vector {
    (0..len)
        .map(|k| if k == i { field.one() } else { field.zero() })
        .collect()
}

fn deterministic_candidates(field: FieldSpec, n: usize, mode: ChainMode) -> Vec<ExtensionParams> {
    let m = n - 1;
    let mut a1s = Vec::new();
    if mode == ChainMode::TrivialOnly {
        a1s.push(Mat::identity(field, n));
    }
    for j in 1..n {
        let mut a = Mat::identity(field, n);
        a.set(0, j, field.one());
        a1s.push(a);
    }
    let mut abar_sets = vec![vec![vec![field.zero(); m]; m]];
    for slot in 0..m {
        for e in 0..m {
            let mut set = vec![vec![field.zero(); m]; m];
            set[slot] = unit_vector(field, m, e);
            abar_sets.push(set);
        }
    }
    let mut out = Vec::new();
    for abars in &abar_sets {
        for a1 in &a1s {
            out.push(ExtensionParams {
                a1: LinMap::new(a1.clone()).expect("square"),
                abars: abars.clone(),
            });
        }
    }
    out
}

fn random_candidate<R: Rng + ?Sized>(
    field: FieldSpec,
    n: usize,
    rng: &mut R,
    bound: u64,
) -> ExtensionParams {
    let m = n - 1;
    let data = (0..n * n).map(|_| field.sample(rng, bound)).collect();
    ExtensionParams {
        a1: LinMap::new(Mat::from_vec(field, n, n, data).expect("shape")).expect("square"),
        abars: (0..m)
            .map(|_| (0..m).map(|_| field.sample(rng, bound)).collect())
            .collect(),
    }
}

/// Tower `A(2) ⊂ A(3) ⊂ ... ⊂ A(target_n)` grown from `seed2(seed)`.
///
/// Each step tries deterministic parameters first and then seeded random
/// draws, accepting the first choice whose output satisfies the step's
/// hypotheses and the rank hypothesis of the following step.
pub fn chain<R: Rng + ?Sized>(
    seed: &SeedParams,
    field: FieldSpec,
    target_n: usize,
    mode: ChainMode,
    rng: &mut R,
    opts: &ChainOptions,
) -> Result<Vec<Stage>> {
    if target_n < 2 {
        return Err(Error::DimensionMismatch("target dimension must be at least 2".into()));
    }
    let base = seed2(seed, field)?;
    let mut checks = stage_checks(&base, opts, None);
    let mut prev_aut_trivial = (checks.aut == "Trivial").then_some(true);
    let mut stages = vec![Stage {
        n: 2,
        msc: base.to_json(),
        checks: checks.clone(),
        algebra: base.clone(),
    }];
    let mut current = base;
    for n in 3..=target_n {
        let m = n - 1;
        if checks.rank_bl != m {
            return Err(Error::SearchExhausted {
                stage: n,
                attempts: 0,
            });
        }
        if mode == ChainMode::SimpleToo && checks.simple != "Simple" {
            return Err(Error::NotSimpleInput);
        }
        let next_needed = n < target_n;
        let accept = |cand: &ExtensionParams| -> Option<Msc> {
            let a = match mode {
                ChainMode::TrivialOnly => extend_trivial(&current, cand).ok()?,
                ChainMode::SimpleToo => {
                    if cand.a1.trace().is_zero() {
                        return None;
                    }
                    extend_simple(&current, cand).ok()?
                }
            };
            if next_needed && block_column_ranks(&a, None).ok()?.0 != n {
                return None;
            }
            Some(a)
        };
        let mut attempts = 0;
        let mut found = None;
        for cand in deterministic_candidates(field, n, mode) {
            if attempts >= opts.max_attempts {
                break;
            }
            attempts += 1;
            if let Some(a) = accept(&cand) {
                found = Some(a);
                break;
            }
        }
        while found.is_none() && attempts < opts.max_attempts {
            attempts += 1;
            let cand = random_candidate(field, n, rng, opts.sample_bound);
            found = accept(&cand);
        }
        let Some(next) = found else {
            return Err(Error::SearchExhausted { stage: n, attempts });
        };
        checks = stage_checks(&next, opts, prev_aut_trivial);
        prev_aut_trivial = match checks.aut.as_str() {
            "Trivial" => Some(true),
            "conditional" => prev_aut_trivial,
            _ => Some(false),
        };
        stages.push(Stage {
            n,
            msc: next.to_json(),
            checks: checks.clone(),
            algebra: next.clone(),
        });
        current = next;
    }
    Ok(stages)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::DEFAULT_BUDGET;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qf() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn col(field: FieldSpec, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| field.from_i64(x)).collect()
    }

    #[test]
    fn seed_examples() {
        assert_eq!(
            seed2(&SeedParams::from_i64(qf(), [0, 0, 0, 0]), qf()).unwrap(),
            Msc::from_i64(qf(), &[&[0, 0, 1, 0], &[0, 0, 1, 0]]).unwrap()
        );
        assert_eq!(
            seed2(&SeedParams::from_i64(gf(5), [0, 0, 0, 1]), gf(5)).unwrap(),
            Msc::from_i64(gf(5), &[&[0, 0, 1, 0], &[1, 0, 1, 0]]).unwrap()
        );
        assert_eq!(
            seed2(&SeedParams::from_i64(gf(2), [1, 1, 1, 1]), gf(2)).unwrap(),
            Msc::from_i64(gf(2), &[&[1, 1, 0, 1], &[1, 1, 0, 1]]).unwrap()
        );
    }

    #[test]
    fn block_rank_examples() {
        let s0q = seed2(&SeedParams::from_i64(qf(), [0, 0, 0, 0]), qf()).unwrap();
        assert_eq!(block_column_ranks(&s0q, None).unwrap(), (2, None));
        let s0_2 = seed2(&SeedParams::from_i64(gf(2), [0, 0, 0, 0]), gf(2)).unwrap();
        assert_eq!(block_column_ranks(&s0_2, None).unwrap(), (1, None));
        let s1 = seed2(&SeedParams::from_i64(qf(), [0, 0, 0, 1]), qf()).unwrap();
        let abars = vec![col(qf(), &[1, 0]), col(qf(), &[0, 0])];
        assert_eq!(block_column_ranks(&s1, Some(&abars)).unwrap(), (2, Some(3)));
    }

    #[test]
    fn extend_trivial_example() {
        let s0 = seed2(&SeedParams::from_i64(qf(), [0, 0, 0, 0]), qf()).unwrap();
        let params = ExtensionParams {
            a1: LinMap::identity(qf(), 3),
            abars: vec![col(qf(), &[0, 0]); 2],
        };
        let a = extend_trivial(&s0, &params).unwrap();
        let expected = Msc::from_left_operators(&[
            Mat::identity(qf(), 3),
            Mat::zeros(qf(), 3, 3),
            Mat::from_i64(qf(), &[&[-1, 0, 0], &[0, 1, 0], &[0, 1, 0]]),
        ])
        .unwrap();
        assert_eq!(a, expected);
        assert!(is_trivial_der(&a));

        let s0_5 = seed2(&SeedParams::from_i64(gf(5), [0, 0, 0, 0]), gf(5)).unwrap();
        let params5 = ExtensionParams {
            a1: LinMap::identity(gf(5), 3),
            abars: vec![col(gf(5), &[0, 0]); 2],
        };
        let a5 = extend_trivial(&s0_5, &params5).unwrap();
        assert!(decide_trivial_aut(&a5, DEFAULT_BUDGET).is_trivial());
    }

    #[test]
    fn extend_trivial_errors() {
        let s0_2 = seed2(&SeedParams::from_i64(gf(2), [0, 0, 0, 0]), gf(2)).unwrap();
        let params = ExtensionParams {
            a1: LinMap::identity(gf(2), 3),
            abars: vec![col(gf(2), &[0, 0]); 2],
        };
        assert_eq!(
            extend_trivial(&s0_2, &params),
            Err(Error::RankConditionFailed {
                rank: 1,
                expected: 2
            })
        );
        let s0 = seed2(&SeedParams::from_i64(qf(), [0, 0, 0, 0]), qf()).unwrap();
        let zero_trace = ExtensionParams {
            a1: LinMap::zero(qf(), 3),
            abars: vec![col(qf(), &[0, 0]); 2],
        };
        assert_eq!(extend_trivial(&s0, &zero_trace), Err(Error::TraceConditionFailed));
    }

    #[test]
    fn extend_simple_examples() {
        for field in [qf(), gf(5)] {
            let s1 = seed2(&SeedParams::from_i64(field, [0, 0, 0, 1]), field).unwrap();
            let abars = vec![col(field, &[1, 0]), col(field, &[0, 0])];
            let params = ExtensionParams {
                a1: LinMap::from_i64(field, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]),
                abars: abars.clone(),
            };
            let a = extend_simple(&s1, &params).unwrap();
            assert!(decide_simple(&a).is_simple());
            let bad = ExtensionParams {
                a1: LinMap::identity(field, 3),
                abars,
            };
            assert_eq!(extend_simple(&s1, &bad), Err(Error::FirstRowZero));
        }
        let s0 = seed2(&SeedParams::from_i64(qf(), [0, 0, 0, 0]), qf()).unwrap();
        let params = ExtensionParams {
            a1: LinMap::from_i64(qf(), &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]),
            abars: vec![col(qf(), &[1, 0]), col(qf(), &[0, 0])],
        };
        assert_eq!(extend_simple(&s0, &params), Err(Error::NotSimpleInput));
    }

    #[test]
    fn augmented_rank_failure() {
        let s1 = seed2(&SeedParams::from_i64(qf(), [0, 0, 0, 1]), qf()).unwrap();
        let params = ExtensionParams {
            a1: LinMap::from_i64(qf(), &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]),
            abars: vec![col(qf(), &[0, 0]), col(qf(), &[0, 0])],
        };
        assert_eq!(
            extend_simple(&s1, &params),
            Err(Error::AugmentedRankFailed {
                rank: 2,
                expected: 3
            })
        );
    }

    #[test]
    fn chain_over_q_to_four() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let stages = chain(
            &SeedParams::from_i64(qf(), [0, 0, 0, 0]),
            qf(),
            4,
            ChainMode::TrivialOnly,
            &mut rng,
            &ChainOptions::default(),
        )
        .unwrap();
        assert_eq!(stages.iter().map(|s| s.n).collect::<Vec<_>>(), vec![2, 3, 4]);
        assert!(stages.iter().all(|s| s.checks.trivial_der));
    }

    #[test]
    fn chain_over_gf2_never_violates_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = chain(
            &SeedParams::from_i64(gf(2), [0, 0, 0, 0]),
            gf(2),
            3,
            ChainMode::TrivialOnly,
            &mut rng,
            &ChainOptions::default(),
        );
        assert!(matches!(r, Err(Error::SearchExhausted { stage: 3, .. })));
    }
}
