//! Integer multivariate polynomials over a fixed variable set, parsed from
//! strings like `b1*t^3 - 3*t - 1`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Poly, Scalar};

pub const VARS: [&str; 7] = ["a1", "a2", "a4", "b1", "b2", "t", "d"];
const NV: usize = VARS.len();

type Exps = [u32; NV];

pub fn var_index(name: &str) -> Option<usize> {
    VARS.iter().position(|v| *v == name)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    terms: BTreeMap<Exps, i64>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: i64) -> Self {
        let mut p = MPoly::zero();
        if c != 0 {
            p.terms.insert([0; NV], c);
        }
        p
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; NV];
        e[i] = 1;
        let mut p = MPoly::zero();
        p.terms.insert(e, 1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, e: Exps, c: i64) {
        let v = self.terms.entry(e).or_insert(0);
        *v = v.checked_add(c).expect("coefficient overflow");
        if *v == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.insert(*e, *c);
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let mut e = [0; NV];
                for k in 0..NV {
                    e[k] = e1[k] + e2[k];
                }
                r.insert(e, c1.checked_mul(*c2).expect("coefficient overflow"));
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> MPoly {
        (0..k).fold(MPoly::constant(1), |acc, _| acc.mul(self))
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Variables occurring with nonzero exponent.
    pub fn variables(&self) -> Vec<&'static str> {
        (0..NV)
            .filter(|&k| self.terms.keys().any(|e| e[k] > 0))
            .map(|k| VARS[k])
            .collect()
    }

    /// Substitutes every variable except `keep` and returns a polynomial in
    /// `keep` over `field`. Unassigned variables other than `keep` are an error.
    pub fn specialize(
        &self,
        field: FieldSpec,
        values: &dyn Fn(&str) -> Option<Scalar>,
        keep: Option<usize>,
    ) -> Result<Poly> {
        let mut coeffs: Vec<Scalar> = Vec::new();
        for (e, c) in &self.terms {
            let mut term = field.from_i64(*c);
            let mut deg = 0usize;
            for k in 0..NV {
                if e[k] == 0 {
                    continue;
                }
                if Some(k) == keep {
                    deg = e[k] as usize;
                    continue;
                }
                let v = values(VARS[k]).ok_or_else(|| {
                    Error::ConstraintViolated(format!("unassigned variable {}", VARS[k]))
                })?;
                term = &term * &v.pow(e[k]);
            }
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, field.zero());
            }
            coeffs[deg] = &coeffs[deg] + &term;
        }
        Ok(Poly::new(field, coeffs))
    }

    /// Value with every variable assigned.
    pub fn eval(&self, field: FieldSpec, values: &dyn Fn(&str) -> Option<Scalar>) -> Result<Scalar> {
        let p = self.specialize(field, values, None)?;
        Ok(p.coeffs().first().cloned().unwrap_or_else(|| field.zero()))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = (0..NV)
                .filter(|&k| e[k] > 0)
                .map(|k| match e[k] {
                    1 => VARS[k].to_string(),
                    x => format!("{}^{x}", VARS[k]),
                })
                .collect();
            let sign = if *c < 0 { "-" } else { "+" };
            if n > 0 {
                write!(f, " {sign} ")?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            let a = c.unsigned_abs();
            match (mono.is_empty(), a) {
                (true, _) => write!(f, "{a}")?,
                (false, 1) => write!(f, "{}", mono.join("*"))?,
                (false, _) => write!(f, "{a}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Num(t.parse().map_err(|_| Error::Parse(t.clone()))?));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(k)) if (0..=32).contains(&k) => {
                    self.pos += 1;
                    Ok(base.pow(k as u32))
                }
                other => Err(Error::Parse(format!("bad exponent {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(k)) => {
                self.pos += 1;
                Ok(MPoly::constant(k))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                var_index(&name)
                    .map(MPoly::var)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name}")))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing )".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse(s: &str) -> Result<MPoly> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_expand() {
        let e = parse("(2*d+1)^2").unwrap();
        assert_eq!(e, parse("4*d^2 + 4*d + 1").unwrap());
        let f = parse("b1*(d^2+d+1) - (2*d+1)^2").unwrap();
        assert_eq!(f, parse("(b1-4)*d^2 + (b1-4)*d + b1 - 1").unwrap());
        assert_eq!(parse("-a1 + a1").unwrap(), MPoly::zero());
        assert!(parse("x+1").is_err());
        assert!(parse("a1 +").is_err());
    }

    #[test]
    fn specialize_in_t() {
        let e = parse("b1*t^3 - 3*t - 1").unwrap();
        let q = FieldSpec::Rationals;
        let vals = |v: &str| (v == "b1").then(|| q.from_i64(2));
        let p = e.specialize(q, &vals, var_index("t")).unwrap();
        assert_eq!(p, Poly::from_i64(q, &[-1, -3, 0, 2]));
        assert!(e.specialize(q, &|_| None, var_index("t")).is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["b1*t^3 - 3*t - 1", "1 - a1", "-a2", "0", "a4*b1 - 2"] {
            let e = parse(s).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
    }
}
