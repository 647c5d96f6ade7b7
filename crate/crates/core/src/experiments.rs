//! Finite-field censuses: the mass of algebras with trivial derivations,
//! trivial automorphisms and simplicity (a proxy for Zariski density, not a
//! proof of it), and the two-dimensional difference sets between the
//! trivial-derivation and trivial-automorphism classes.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra::{Msc, MscJson};
use crate::automorphisms::{are_isomorphic, decide_trivial_aut, DEFAULT_BUDGET};
use crate::classify2d::audit::{orbit_cover, table_instances};
use crate::classify2d::Property;
use crate::derivations::{derivation_basis, is_trivial_der};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::simplicity::{decide_simple_with_budget, SimplicityStatus};
use crate::smallfield::{check_budget, gl_order, prime_of, GlGroup, SmallMsc};

pub const MEASURE_NOTE: &str =
    "finite-field mass of each property; an empirical proxy for Zariski density, not a verification";

/// Samples per PRNG stream. Sample `i` comes from stream `i / CHUNK` of the
/// master seed, so results do not depend on the worker count.
const CHUNK: u64 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Samples {
    Exhaustive,
    Count(u64),
}

impl Serialize for Samples {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Samples::Exhaustive => s.serialize_str("exhaustive"),
            Samples::Count(c) => s.serialize_u64(*c),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    /// Largest number of MSCs an exhaustive scan may visit.
    pub budget: u128,
    /// Largest `|GL(n, p)|` for which automorphisms are enumerated per sample.
    pub aut_budget: u128,
    /// Largest number of projective points scanned per simplicity verdict.
    pub point_budget: u128,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            budget: DEFAULT_BUDGET,
            aut_budget: 20_000,
            point_budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counts {
    pub total: u64,
    pub trivial_der: u64,
    pub trivial_aut: Option<u64>,
    pub simple: u64,
    pub simple_unknown: u64,
    pub star: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fractions {
    pub trivial_der: f64,
    pub trivial_aut: Option<f64>,
    pub simple: f64,
    pub star: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub field: String,
    pub n: usize,
    pub samples: Samples,
    pub seed: Option<u64>,
    pub measure: &'static str,
    pub counts: Counts,
    pub fractions: Fractions,
}

fn space_of(field: FieldSpec, n: usize) -> Result<(u32, u128)> {
    let p = prime_of(field).map_err(|_| Error::NotFiniteField)?;
    Ok((p, SmallMsc::space_size(n, p)))
}

fn random_small<R: Rng + ?Sized>(n: usize, p: u32, rng: &mut R) -> SmallMsc {
    SmallMsc {
        n,
        p,
        a: (0..n * n * n).map(|_| rng.random_range(0..p)).collect(),
    }
}

/// The MSCs visited by a scan, in a fixed order.
fn visit<T, F>(n: usize, p: u32, samples: Samples, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(SmallMsc) -> T + Sync,
{
    match samples {
        Samples::Exhaustive => {
            let total = SmallMsc::space_size(n, p) as u64;
            (0..total)
                .into_par_iter()
                .map(|i| f(SmallMsc::from_index(n, p, i)))
                .collect()
        }
        Samples::Count(count) => {
            let chunks = count.div_ceil(CHUNK);
            (0..chunks)
                .into_par_iter()
                .flat_map_iter(|c| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(c);
                    let len = CHUNK.min(count - c * CHUNK);
                    (0..len)
                        .map(|_| f(random_small(n, p, &mut rng)))
                        .collect::<Vec<_>>()
                })
                .collect()
        }
    }
}

pub fn density_scan(
    field: FieldSpec,
    n: usize,
    samples: Samples,
    seed: u64,
    opts: &ScanOptions,
) -> Result<DensityReport> {
    let (p, space) = space_of(field, n)?;
    if n == 0 {
        return Err(Error::DimensionMismatch("dimension must be positive".into()));
    }
    if samples == Samples::Exhaustive {
        check_budget(space, opts.budget)?;
    }
    let with_aut = gl_order(n, p as u64) <= opts.aut_budget;
    let rows = visit(n, p, samples, seed, |s| {
        let a = s.to_msc();
        let der = derivation_basis(&a).is_empty();
        let aut = with_aut && decide_trivial_aut(&a, opts.aut_budget).is_trivial();
        let simple = decide_simple_with_budget(&a, opts.point_budget).status;
        (der, aut, simple)
    });
    let total = rows.len() as u64;
    let count = |f: &dyn Fn(&(bool, bool, SimplicityStatus)) -> bool| {
        rows.iter().filter(|r| f(r)).count() as u64
    };
    let trivial_der = count(&|r| r.0);
    let simple = count(&|r| r.2 == SimplicityStatus::Simple);
    let simple_unknown = count(&|r| r.2 == SimplicityStatus::Unknown);
    let (trivial_aut, star) = if with_aut {
        (
            Some(count(&|r| r.1)),
            Some(count(&|r| r.0 && r.1 && r.2 == SimplicityStatus::Simple)),
        )
    } else {
        (None, None)
    };
    let frac = |c: u64| if total == 0 { 0.0 } else { c as f64 / total as f64 };
    Ok(DensityReport {
        field: field.to_string(),
        n,
        samples,
        seed: match samples {
            Samples::Exhaustive => None,
            Samples::Count(_) => Some(seed),
        },
        measure: MEASURE_NOTE,
        counts: Counts {
            total,
            trivial_der,
            trivial_aut,
            simple,
            simple_unknown,
            star,
        },
        fractions: Fractions {
            trivial_der: frac(trivial_der),
            trivial_aut: trivial_aut.map(frac),
            simple: frac(simple),
            star: star.map(frac),
        },
    })
}

/// Plot-ready CSV, one row per report.
pub fn density_csv(reports: &[DensityReport]) -> String {
    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    let mut out = String::from("field,p,n,samples,trivial_der,trivial_aut,simple,star\n");
    for r in reports {
        let p = r.field.trim_start_matches("GF");
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.field,
            p,
            r.n,
            r.counts.total,
            r.fractions.trivial_der,
            opt(r.fractions.trivial_aut),
            r.fractions.simple,
            opt(r.fractions.star),
        ));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiffOrbit {
    pub representative: MscJson,
    pub members_seen: u64,
    pub orbit_size: usize,
    /// Label of the table instance in the same orbit.
    pub matched: Option<String>,
    /// `g` with `g M (g^-1 ⊗ g^-1)` equal to the matched instance.
    pub witness: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiffReport {
    pub property: String,
    pub count: u64,
    pub orbits: Vec<DiffOrbit>,
    pub unmatched_orbits: usize,
    /// Table instances whose checker verdicts contradict membership.
    pub unsound_instances: Vec<String>,
    /// Table instances whose orbit never met the scan (exhaustive scans only).
    pub unseen_instances: Vec<String>,
    pub matches_table: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InclusionReport {
    pub field: String,
    pub n: usize,
    pub samples: Samples,
    pub seed: Option<u64>,
    pub total: u64,
    pub trivial_der: u64,
    pub trivial_aut: u64,
    pub aut_not_der_count: u64,
    pub der_not_aut_count: u64,
    /// Trivial Aut implies trivial Der on every visited MSC.
    pub inclusion_holds: bool,
    pub aut_not_der: DiffReport,
    pub der_not_aut: DiffReport,
}

fn diff_report(
    field: FieldSpec,
    property: Property,
    members: &[SmallMsc],
    exhaustive: bool,
    gl: &GlGroup,
) -> Result<DiffReport> {
    let instances = table_instances(field, property)?;
    let cover = orbit_cover(&instances, gl)?;
    let mut by_orbit: BTreeMap<u64, (SmallMsc, u64)> = BTreeMap::new();
    let mut orbit_of: HashMap<Vec<u32>, u64> = HashMap::new();
    for m in members {
        let key = match orbit_of.get(&m.a) {
            Some(k) => *k,
            None => {
                let orbit = m.orbit_indices(gl);
                let k = orbit[0];
                if exhaustive {
                    for idx in orbit {
                        orbit_of.insert(SmallMsc::from_index(2, m.p, idx).a, k);
                    }
                }
                k
            }
        };
        by_orbit
            .entry(key)
            .or_insert_with(|| (SmallMsc::from_index(2, m.p, key), 0))
            .1 += 1;
    }
    let mut orbits = Vec::new();
    let mut met = vec![false; instances.len()];
    for (key, (rep, seen)) in &by_orbit {
        let hit = cover.get(key).and_then(|v| v.first().copied());
        let (matched, witness) = match hit {
            Some(k) => {
                met[k] = true;
                let g = are_isomorphic(&rep.to_msc(), &instances[k].msc, DEFAULT_BUDGET)?;
                (Some(instances[k].label.clone()), g.map(|g| g.to_strings()))
            }
            None => (None, None),
        };
        orbits.push(DiffOrbit {
            representative: rep.to_msc().to_json(),
            members_seen: *seen,
            orbit_size: rep.orbit_indices(gl).len(),
            matched,
            witness,
        });
    }
    let unmatched_orbits = orbits.iter().filter(|o| o.matched.is_none()).count();
    let mut unsound_instances = Vec::new();
    for inst in &instances {
        let a = &inst.msc;
        let der = is_trivial_der(a);
        let aut = decide_trivial_aut(a, DEFAULT_BUDGET).is_trivial();
        let ok = match property {
            Property::AutNotDer => aut && !der,
            _ => der && !aut,
        };
        if !ok {
            unsound_instances.push(inst.label.clone());
        }
    }
    // instances sharing an orbit with an earlier instance
    for (k, inst) in instances.iter().enumerate() {
        if !met[k] {
            let key = SmallMsc::from_msc(&inst.msc)?.orbit_min_index(gl);
            if by_orbit.contains_key(&key) {
                met[k] = true;
            }
        }
    }
    let unseen_instances: Vec<String> = if exhaustive {
        instances
            .iter()
            .zip(&met)
            .filter(|(_, m)| !**m)
            .map(|(i, _)| i.label.clone())
            .collect()
    } else {
        Vec::new()
    };
    Ok(DiffReport {
        property: property.cli_name().to_string(),
        count: members.len() as u64,
        matches_table: unmatched_orbits == 0
            && unsound_instances.is_empty()
            && unseen_instances.is_empty(),
        orbits,
        unmatched_orbits,
        unsound_instances,
        unseen_instances,
    })
}

/// Two-dimensional scan of the trivial-Aut / trivial-Der difference sets,
/// matched against the classification tables up to GL(2, p).
pub fn inclusion_scan(
    field: FieldSpec,
    samples: Samples,
    seed: u64,
    opts: &ScanOptions,
) -> Result<InclusionReport> {
    let n = 2;
    let (p, space) = space_of(field, n)?;
    if samples == Samples::Exhaustive {
        check_budget(space, opts.budget)?;
    }
    let rows = visit(n, p, samples, seed, |s| {
        let a: Msc = s.to_msc();
        let der = is_trivial_der(&a);
        let aut = decide_trivial_aut(&a, DEFAULT_BUDGET).is_trivial();
        (s, der, aut)
    });
    let gl = GlGroup::new(2, p);
    let aut_not_der: Vec<SmallMsc> = rows
        .iter()
        .filter(|r| r.2 && !r.1)
        .map(|r| r.0.clone())
        .collect();
    let der_not_aut: Vec<SmallMsc> = rows
        .iter()
        .filter(|r| r.1 && !r.2)
        .map(|r| r.0.clone())
        .collect();
    let exhaustive = samples == Samples::Exhaustive;
    Ok(InclusionReport {
        field: field.to_string(),
        n,
        samples,
        seed: (!exhaustive).then_some(seed),
        total: rows.len() as u64,
        trivial_der: rows.iter().filter(|r| r.1).count() as u64,
        trivial_aut: rows.iter().filter(|r| r.2).count() as u64,
        aut_not_der_count: aut_not_der.len() as u64,
        der_not_aut_count: der_not_aut.len() as u64,
        inclusion_holds: aut_not_der.is_empty(),
        aut_not_der: diff_report(field, Property::AutNotDer, &aut_not_der, exhaustive, &gl)?,
        der_not_aut: diff_report(field, Property::DerNotAut, &der_not_aut, exhaustive, &gl)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = density_scan(gf(2), 2, Samples::Count(10), 7, &ScanOptions::default()).unwrap();
        let b = density_scan(gf(2), 2, Samples::Count(10), 7, &ScanOptions::default()).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert_eq!(a.counts.total, 10);
    }

    #[test]
    fn sampling_independent_of_pool_size() {
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| {
                    density_scan(gf(5), 2, Samples::Count(600), 3, &ScanOptions::default()).unwrap()
                })
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn exhaustive_gf2_fractions_are_consistent() {
        let r = density_scan(gf(2), 2, Samples::Exhaustive, 0, &ScanOptions::default()).unwrap();
        assert_eq!(r.counts.total, 256);
        assert_eq!(r.seed, None);
        let star = r.fractions.star.unwrap();
        assert!(star <= r.fractions.trivial_der);
        assert!(star <= r.fractions.simple);
        assert!(star <= r.fractions.trivial_aut.unwrap());
    }

    #[test]
    fn rationals_rejected() {
        assert_eq!(
            density_scan(FieldSpec::Rationals, 2, Samples::Count(1), 0, &ScanOptions::default()),
            Err(Error::NotFiniteField)
        );
    }

    #[test]
    fn exhaustive_budget() {
        let opts = ScanOptions {
            budget: 100,
            ..ScanOptions::default()
        };
        assert!(matches!(
            density_scan(gf(2), 2, Samples::Exhaustive, 0, &opts),
            Err(Error::BudgetExceeded { required: 256, .. })
        ));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let r = density_scan(gf(3), 2, Samples::Count(20), 1, &ScanOptions::default()).unwrap();
        let csv = density_csv(&[r]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[1].starts_with("GF3,3,2,20,"));
    }
}
