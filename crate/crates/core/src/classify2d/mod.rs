//! Two-dimensional classification tables: family records with templates and
//! machine-checkable constraints, instantiation, finite-field enumeration and
//! exhaustive audits against the independent checkers.

pub mod audit;
pub mod expr;
mod tables;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::Msc;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Mat;

pub use audit::{audit_completeness, AuditReport, Violation};
pub use expr::{parse, MPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CharClass {
    NotTwoThree,
    Two,
    Three,
}

impl CharClass {
    pub fn of(field: FieldSpec) -> CharClass {
        match field.characteristic() {
            2 => CharClass::Two,
            3 => CharClass::Three,
            _ => CharClass::NotTwoThree,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Property {
    TrivDer,
    TrivAut,
    Simple,
    DerNotAut,
    AutNotDer,
    Star,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::TrivDer,
        Property::TrivAut,
        Property::Simple,
        Property::DerNotAut,
        Property::AutNotDer,
        Property::Star,
    ];

    pub fn cli_name(&self) -> &'static str {
        match self {
            Property::TrivDer => "trivder",
            Property::TrivAut => "trivaut",
            Property::Simple => "simple",
            Property::DerNotAut => "dernotaut",
            Property::AutNotDer => "autnotder",
            Property::Star => "star",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for Property {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let l = s.to_ascii_lowercase().replace(['_', '-'], "");
        Property::ALL
            .into_iter()
            .find(|p| p.cli_name() == l)
            .ok_or_else(|| Error::Parse(format!("unknown property {s:?}")))
    }
}

/// A machine-checkable side condition. Polynomials are stored as source
/// strings over the family parameters, with `t` (root conditions) and `d`
/// (solvability conditions) as auxiliary variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Predicate {
    NonZero { expr: String },
    Zero { expr: String },
    NoRoot { poly: String },
    HasRoot { poly: String },
    /// No `d` with `num(d) = 0` and `den(d) != 0`.
    NoSolution { num: String, den: String },
    HasSolution { num: String, den: String },
    /// The field is exactly GF(p).
    FieldIs { p: u64 },
    /// Disjunction of conjunctions.
    Any { branches: Vec<Vec<Predicate>> },
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::NonZero { expr } => write!(f, "{expr} != 0"),
            Predicate::Zero { expr } => write!(f, "{expr} = 0"),
            Predicate::NoRoot { poly } => write!(f, "{poly} has no root"),
            Predicate::HasRoot { poly } => write!(f, "{poly} has a root"),
            Predicate::NoSolution { num, den } => {
                write!(f, "no d with {num} = 0 and {den} != 0")
            }
            Predicate::HasSolution { num, den } => {
                write!(f, "some d with {num} = 0 and {den} != 0")
            }
            Predicate::FieldIs { p } => write!(f, "field is GF{p}"),
            Predicate::Any { branches } => {
                let parts: Vec<String> = branches
                    .iter()
                    .map(|b| {
                        let c: Vec<String> = b.iter().map(|p| p.to_string()).collect();
                        format!("({})", c.join(" and "))
                    })
                    .collect();
                write!(f, "{}", parts.join(" or "))
            }
        }
    }
}

fn has_root(poly: &str, field: FieldSpec, values: &dyn Fn(&str) -> Option<Scalar>) -> Result<bool> {
    let p = parse(poly)?.specialize(field, values, expr::var_index("t"))?;
    if p.is_zero() {
        return Ok(true);
    }
    Ok(!p.roots()?.is_empty())
}

fn has_solution(
    num: &str,
    den: &str,
    field: FieldSpec,
    values: &dyn Fn(&str) -> Option<Scalar>,
) -> Result<bool> {
    let d = expr::var_index("d");
    let num = parse(num)?.specialize(field, values, d)?;
    let den = parse(den)?.specialize(field, values, d)?;
    if den.is_zero() {
        return Ok(false);
    }
    if field.is_finite() {
        return Ok(field
            .elements()
            .iter()
            .any(|x| num.eval(x).is_zero() && !den.eval(x).is_zero()));
    }
    if num.is_zero() {
        // den has finitely many roots in an infinite field
        return Ok(true);
    }
    Ok(num.roots()?.iter().any(|x| !den.eval(x).is_zero()))
}

impl Predicate {
    /// Parameters and auxiliary variables referenced.
    pub fn variables(&self) -> Result<Vec<&'static str>> {
        let mut out = Vec::new();
        let mut add = |s: &str| -> Result<()> {
            out.extend(parse(s)?.variables());
            Ok(())
        };
        match self {
            Predicate::NonZero { expr } | Predicate::Zero { expr } => add(expr)?,
            Predicate::NoRoot { poly } | Predicate::HasRoot { poly } => add(poly)?,
            Predicate::NoSolution { num, den } | Predicate::HasSolution { num, den } => {
                add(num)?;
                add(den)?;
            }
            Predicate::FieldIs { .. } => {}
            Predicate::Any { branches } => {
                for b in branches {
                    for p in b {
                        out.extend(p.variables()?);
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn holds(&self, field: FieldSpec, values: &dyn Fn(&str) -> Option<Scalar>) -> Result<bool> {
        match self {
            Predicate::NonZero { expr } => Ok(!parse(expr)?.eval(field, values)?.is_zero()),
            Predicate::Zero { expr } => Ok(parse(expr)?.eval(field, values)?.is_zero()),
            Predicate::NoRoot { poly } => Ok(!has_root(poly, field, values)?),
            Predicate::HasRoot { poly } => has_root(poly, field, values),
            Predicate::NoSolution { num, den } => Ok(!has_solution(num, den, field, values)?),
            Predicate::HasSolution { num, den } => has_solution(num, den, field, values),
            Predicate::FieldIs { p } => Ok(field == FieldSpec::Prime(*p)),
            Predicate::Any { branches } => {
                for b in branches {
                    let mut all = true;
                    for p in b {
                        if !p.holds(field, values)? {
                            all = false;
                            break;
                        }
                    }
                    if all {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }
}

/// One entry of a classification table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub id: String,
    pub char_class: CharClass,
    pub tags: Vec<Property>,
    pub params: Vec<String>,
    pub template: [[String; 4]; 2],
    pub constraints: Vec<Predicate>,
}

impl Family {
    fn lookup<'a>(&'a self, values: &'a [Scalar]) -> impl Fn(&str) -> Option<Scalar> + 'a {
        move |name: &str| {
            self.params
                .iter()
                .position(|p| p == name)
                .map(|i| values[i].clone())
        }
    }

    /// First violated constraint, if any.
    pub fn first_violation(&self, values: &[Scalar], field: FieldSpec) -> Result<Option<&Predicate>> {
        let look = self.lookup(values);
        for c in &self.constraints {
            if !c.holds(field, &look)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    /// Template with parameters substituted, without constraint checks.
    pub fn substitute(&self, values: &[Scalar], field: FieldSpec) -> Result<Msc> {
        if values.len() != self.params.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} expects {} parameters, got {}",
                self.id,
                self.params.len(),
                values.len()
            )));
        }
        let look = self.lookup(values);
        let mut rows = Vec::with_capacity(2);
        for row in &self.template {
            let mut r = Vec::with_capacity(4);
            for e in row {
                r.push(parse(e)?.eval(field, &look)?);
            }
            rows.push(r);
        }
        Msc::new(Mat::from_rows(field, rows)?)
    }

    pub fn label(&self, values: &[Scalar]) -> String {
        if values.is_empty() {
            return self.id.clone();
        }
        let v: Vec<String> = values.iter().map(|s| s.to_string()).collect();
        format!("{}({})", self.id, v.join(","))
    }
}

/// Families of the classification matching `char(field)` and `property`.
pub fn table(field: FieldSpec, property: Property) -> Vec<Family> {
    tables::families(CharClass::of(field), property)
}

/// Every family of every table, each listed once per table it appears in.
pub fn all_families() -> Vec<Family> {
    let mut out = Vec::new();
    for class in [CharClass::NotTwoThree, CharClass::Two, CharClass::Three] {
        for prop in Property::ALL {
            out.extend(tables::families(class, prop));
        }
    }
    out
}

pub fn instantiate(fam: &Family, values: &[Scalar], field: FieldSpec) -> Result<Msc> {
    if CharClass::of(field) != fam.char_class {
        return Err(Error::CharMismatch {
            family: fam.id.clone(),
            expected: format!("{:?}", fam.char_class),
            found: field.characteristic(),
        });
    }
    if values.iter().any(|v| !field.contains(v)) {
        return Err(Error::FieldMismatch {
            expected: field.to_string(),
            found: "foreign scalar".into(),
        });
    }
    if values.len() != fam.params.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} expects {} parameters, got {}",
            fam.id,
            fam.params.len(),
            values.len()
        )));
    }
    if let Some(p) = fam.first_violation(values, field)? {
        return Err(Error::ConstraintViolated(p.to_string()));
    }
    fam.substitute(values, field)
}

/// A materialized family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub family: String,
    pub values: Vec<Scalar>,
    pub label: String,
    pub msc: Msc,
}

/// All constraint-satisfying instantiations over GF(p), deduplicated as raw MSCs.
pub fn enumerate_instances(fam: &Family, field: FieldSpec, budget: u128) -> Result<Vec<Instance>> {
    let p = field.order().ok_or(Error::NotFiniteField)?;
    let k = fam.params.len() as u32;
    let count = (p as u128).saturating_pow(k);
    if count > budget {
        return Err(Error::BudgetExceeded {
            required: count,
            budget,
        });
    }
    if CharClass::of(field) != fam.char_class {
        return Err(Error::CharMismatch {
            family: fam.id.clone(),
            expected: format!("{:?}", fam.char_class),
            found: field.characteristic(),
        });
    }
    let elems = field.elements();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for idx in 0..count as u64 {
        let mut rest = idx;
        let mut values = vec![field.zero(); k as usize];
        for slot in (0..k as usize).rev() {
            values[slot] = elems[(rest % p) as usize].clone();
            rest /= p;
        }
        if fam.first_violation(&values, field)?.is_some() {
            continue;
        }
        let msc = fam.substitute(&values, field)?;
        if seen.insert(msc.clone()) {
            out.push(Instance {
                family: fam.id.clone(),
                label: fam.label(&values),
                values,
                msc,
            });
        }
    }
    Ok(out)
}

/// Families (of the table for `field`, `property`) having `msc` as a raw
/// instance, with the parameter values found. GF(p) only.
pub fn match_family(msc: &Msc, property: Property) -> Result<Vec<Instance>> {
    let field = msc.field();
    if msc.dim() != 2 {
        return Err(Error::DimensionMismatch("classification covers n = 2 only".into()));
    }
    let mut out = Vec::new();
    for fam in table(field, property) {
        for inst in enumerate_instances(&fam, field, crate::automorphisms::DEFAULT_BUDGET)? {
            if inst.msc == *msc {
                out.push(inst);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn find(field: FieldSpec, prop: Property, id: &str) -> Family {
        table(field, prop)
            .into_iter()
            .find(|f| f.id == id)
            .unwrap_or_else(|| panic!("{id} missing"))
    }

    #[test]
    fn trivial_derivation_list_char_not_two_three() {
        let ids: Vec<String> = table(gf(5), Property::TrivDer).into_iter().map(|f| f.id).collect();
        assert_eq!(
            ids,
            ["A_1", "A_2", "A_3", "A_4", "A_6", "A_7", "A_8", "A_10", "A_11", "A_12"]
        );
    }

    #[test]
    fn simple_list_char_two_ends_with_square_condition() {
        let t = table(gf(2), Property::Simple);
        let last = t.last().unwrap();
        assert_eq!(last.id, "A_{11,2}");
        assert_eq!(
            last.constraints,
            vec![Predicate::HasRoot {
                poly: "t^2 - b1".into()
            }]
        );
    }

    #[test]
    fn aut_not_der_char_three() {
        let ids: Vec<String> = table(gf(3), Property::AutNotDer).into_iter().map(|f| f.id).collect();
        assert_eq!(ids, ["A_{9,3}", "A_{10,3}"]);
        assert!(table(gf(5), Property::AutNotDer).is_empty());
    }

    #[test]
    fn instantiate_examples() {
        let a8 = find(gf(5), Property::TrivDer, "A_8");
        assert_eq!(
            instantiate(&a8, &[gf(5).zero()], gf(5)).unwrap(),
            Msc::from_i64(gf(5), &[&[0, 1, 1, 0], &[0, 1, 0, 4]]).unwrap()
        );
        let a11 = find(q(), Property::TrivDer, "A_11");
        assert_eq!(
            instantiate(&a11, &[q().from_i64(2)], q()).unwrap(),
            Msc::from_i64(q(), &[&[0, 0, 0, 1], &[2, 0, 0, 0]]).unwrap()
        );
        match instantiate(&a11, &[q().from_i64(8)], q()) {
            Err(Error::ConstraintViolated(msg)) => assert!(msg.contains("has no root"), "{msg}"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            instantiate(&a8, &[gf(2).zero()], gf(2)),
            Err(Error::CharMismatch { .. })
        ));
    }

    #[test]
    fn enumeration_examples() {
        let a8 = find(gf(2), Property::TrivDer, "A_{8,2}");
        assert_eq!(a8.constraints.len(), 1);
        let a8_plain = find(gf(5), Property::TrivDer, "A_8");
        assert_eq!(enumerate_instances(&a8_plain, gf(5), 1000).unwrap().len(), 5);
        let a11 = find(gf(5), Property::TrivDer, "A_11");
        assert!(enumerate_instances(&a11, gf(5), 1000).unwrap().is_empty());
        let a12 = find(gf(3), Property::Simple, "A_{12,3}");
        assert_eq!(enumerate_instances(&a12, gf(3), 1000).unwrap().len(), 1);
        let a1 = find(gf(2), Property::Simple, "A_{1,2}");
        let inst = enumerate_instances(&a1, gf(2), 1000).unwrap();
        assert_eq!(inst.len(), 12);
        assert!(matches!(
            enumerate_instances(&a1, gf(2), 4),
            Err(Error::BudgetExceeded { required: 16, .. })
        ));
    }

    #[test]
    fn cube_root_condition_by_field() {
        // d^3 = 1 only for d = 1
        let p = Predicate::NoSolution {
            num: "d^2 + d + 1".into(),
            den: "d - 1".into(),
        };
        let none = |_: &str| None;
        assert!(p.holds(q(), &none).unwrap());
        assert!(p.holds(gf(2), &none).unwrap());
        assert!(p.holds(gf(3), &none).unwrap());
        assert!(p.holds(gf(5), &none).unwrap());
        assert!(!p.holds(gf(7), &none).unwrap());
    }

    #[test]
    fn normalized_solvability_matches_rational_form() {
        // b1 = (2d+1)^2 / (d^2+d+1): d = 0 gives b1 = 1, d = 1 gives b1 = 3
        let p = Predicate::HasSolution {
            num: "b1*(d^2 + d + 1) - (2*d + 1)^2".into(),
            den: "d^2 + d + 1".into(),
        };
        for (b1, expect) in [(1, true), (3, true), (4, false)] {
            let look = move |v: &str| (v == "b1").then(|| q().from_i64(b1));
            assert_eq!(p.holds(q(), &look).unwrap(), expect, "b1 = {b1}");
        }
    }

    #[test]
    fn constraints_reference_declared_parameters() {
        for fam in all_families() {
            for c in &fam.constraints {
                for v in c.variables().unwrap() {
                    assert!(
                        fam.params.iter().any(|p| p == v) || v == "t" || v == "d",
                        "{}: {v}",
                        fam.id
                    );
                }
            }
            for row in &fam.template {
                for e in row {
                    let p = parse(e).unwrap();
                    for v in p.variables() {
                        assert!(fam.params.iter().any(|x| x == v), "{}: {v}", fam.id);
                    }
                    assert!(p.total_degree().unwrap_or(0) <= 1, "{}: {e}", fam.id);
                }
            }
        }
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.cli_name().parse::<Property>().unwrap(), p);
        }
        assert_eq!("TrivDer".parse::<Property>().unwrap(), Property::TrivDer);
        assert!("foo".parse::<Property>().is_err());
    }
}
