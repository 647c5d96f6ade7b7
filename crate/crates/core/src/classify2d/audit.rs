//! Exhaustive comparison of a table against the independent checkers over
//! all `p^8` two-dimensional MSCs.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{enumerate_instances, table, Instance, Property};
use crate::algebra::{Msc, MscJson};
use crate::automorphisms::{are_isomorphic, decide_trivial_aut, DEFAULT_BUDGET};
use crate::derivations::is_trivial_der;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::simplicity::decide_simple;
use crate::smallfield::{check_budget, prime_of, GlGroup, SmallMsc};

/// Listed violations are capped; `violation_count` is exact.
pub const MAX_LISTED: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub members: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub msc: Option<MscJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub field: String,
    pub property: String,
    pub total_msc: u64,
    pub holding: u64,
    pub families: Vec<String>,
    pub instances: usize,
    pub sound: bool,
    pub complete: bool,
    pub unique: bool,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.sound && self.complete && self.unique
    }
}

/// Verdict bits of the three checkers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Verdicts {
    pub trivial_der: bool,
    pub trivial_aut: bool,
    pub simple: bool,
}

impl Verdicts {
    pub fn of(a: &Msc) -> Verdicts {
        Verdicts {
            trivial_der: is_trivial_der(a),
            trivial_aut: decide_trivial_aut(a, DEFAULT_BUDGET).is_trivial(),
            simple: decide_simple(a).is_simple(),
        }
    }

    pub fn has(&self, p: Property) -> bool {
        match p {
            Property::TrivDer => self.trivial_der,
            Property::TrivAut => self.trivial_aut,
            Property::Simple => self.simple,
            Property::Star => self.trivial_der && self.trivial_aut && self.simple,
            Property::DerNotAut => self.trivial_der && !self.trivial_aut,
            Property::AutNotDer => self.trivial_aut && !self.trivial_der,
        }
    }
}

/// Checker verdicts for every two-dimensional MSC over GF(p), by index.
pub fn census(field: FieldSpec, budget: u128) -> Result<Vec<Verdicts>> {
    let p = prime_of(field)?;
    let total = SmallMsc::space_size(2, p);
    check_budget(total, budget)?;
    Ok((0..total as u64)
        .into_par_iter()
        .map(|i| Verdicts::of(&SmallMsc::from_index(2, p, i).to_msc()))
        .collect())
}

/// All raw instances of the table for `(field, property)`, in table order.
pub fn table_instances(field: FieldSpec, property: Property) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for fam in table(field, property) {
        out.extend(enumerate_instances(&fam, field, DEFAULT_BUDGET)?);
    }
    Ok(out)
}

/// Orbit index -> positions of the instances whose orbit contains it.
pub fn orbit_cover(instances: &[Instance], gl: &GlGroup) -> Result<HashMap<u64, Vec<usize>>> {
    let mut cover: HashMap<u64, Vec<usize>> = HashMap::new();
    let orbits: Vec<Vec<u64>> = instances
        .par_iter()
        .map(|inst| SmallMsc::from_msc(&inst.msc).map(|s| s.orbit_indices(gl)))
        .collect::<Result<_>>()?;
    for (k, orbit) in orbits.into_iter().enumerate() {
        for idx in orbit {
            cover.entry(idx).or_default().push(k);
        }
    }
    Ok(cover)
}

pub fn audit_completeness(field: FieldSpec, property: Property) -> Result<AuditReport> {
    audit_with_census(field, property, &census(field, DEFAULT_BUDGET)?)
}

/// Audit against a precomputed census (shared across properties).
pub fn audit_with_census(
    field: FieldSpec,
    property: Property,
    verdicts: &[Verdicts],
) -> Result<AuditReport> {
    let p = prime_of(field)?;
    let total = SmallMsc::space_size(2, p);
    if verdicts.len() as u128 != total {
        return Err(Error::DimensionMismatch(format!(
            "census has {} entries, expected {total}",
            verdicts.len()
        )));
    }
    let gl = GlGroup::new(2, p);
    let families: Vec<String> = table(field, property).into_iter().map(|f| f.id).collect();
    let instances = table_instances(field, property)?;
    let mut violations = Vec::new();

    let mut sound = true;
    for inst in &instances {
        let idx = SmallMsc::from_msc(&inst.msc)?.index();
        if !verdicts[idx as usize].has(property) {
            sound = false;
            violations.push(Violation {
                kind: "unsound".into(),
                members: vec![inst.label.clone()],
                msc: Some(inst.msc.to_json()),
                orbit_size: None,
                witness: None,
            });
        }
    }

    let cover = orbit_cover(&instances, &gl)?;
    let mut uncovered: BTreeMap<u64, usize> = BTreeMap::new();
    let missing: Vec<u64> = (0..total as u64)
        .filter(|&i| verdicts[i as usize].has(property) && !cover.contains_key(&i))
        .collect();
    let mut done = HashSet::new();
    for i in missing {
        if done.contains(&i) {
            continue;
        }
        let orbit = SmallMsc::from_index(2, p, i).orbit_indices(&gl);
        uncovered.insert(orbit[0], orbit.len());
        done.extend(orbit);
    }
    let complete = uncovered.is_empty();
    for (rep, size) in &uncovered {
        violations.push(Violation {
            kind: "uncovered".into(),
            members: Vec::new(),
            msc: Some(SmallMsc::from_index(2, p, *rep).to_msc().to_json()),
            orbit_size: Some(*size),
            witness: None,
        });
    }

    let mut groups: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (k, inst) in instances.iter().enumerate() {
        let s = SmallMsc::from_msc(&inst.msc)?;
        groups.entry(s.orbit_min_index(&gl)).or_default().push(k);
    }
    let mut unique = true;
    for members in groups.values().filter(|m| m.len() > 1) {
        unique = false;
        let first = &instances[members[0]].msc;
        let second = &instances[members[1]].msc;
        let witness = are_isomorphic(first, second, DEFAULT_BUDGET)?.map(|g| g.to_strings());
        violations.push(Violation {
            kind: "not_unique".into(),
            members: members.iter().map(|&k| instances[k].label.clone()).collect(),
            msc: None,
            orbit_size: None,
            witness,
        });
    }

    let holding = verdicts.iter().filter(|v| v.has(property)).count() as u64;
    let violation_count = violations.len();
    violations.truncate(MAX_LISTED);
    Ok(AuditReport {
        field: field.to_string(),
        property: property.cli_name().to_string(),
        total_msc: total as u64,
        holding,
        families,
        instances: instances.len(),
        sound,
        complete,
        unique,
        violation_count,
        violations,
    })
}
