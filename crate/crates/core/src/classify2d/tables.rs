use super::{CharClass, Family, Predicate, Property};

type Template = [[&'static str; 4]; 2];

const A1: Template = [["a1", "a2", "1 + a2", "a4"], ["b1", "-a1", "1 - a1", "-a2"]];
const A2: Template = [["a1", "0", "0", "a4"], ["1", "b2", "1 - a1", "0"]];
const A3: Template = [["a1", "0", "0", "a4"], ["0", "b2", "1 - a1", "0"]];
const A4: Template = [["0", "1", "1", "0"], ["b1", "b2", "1", "-1"]];
const A6: Template = [["a1", "0", "0", "a4"], ["1", "1 - a1", "-a1", "0"]];
const A7: Template = [["a1", "0", "0", "a4"], ["0", "1 - a1", "-a1", "0"]];
const A8: Template = [["0", "1", "1", "0"], ["b1", "1", "0", "-1"]];
const A10: Template = [["0", "1", "1", "1"], ["b1", "0", "0", "-1"]];
const A11: Template = [["0", "0", "0", "1"], ["b1", "0", "0", "0"]];
const A12: Template = [["0", "1", "1", "0"], ["b1", "0", "0", "-1"]];
const A12_3: Template = [["1", "0", "0", "0"], ["1", "-1", "-1", "0"]];

const A1_2: Template = [["a1", "a2", "a2 + 1", "a4"], ["b1", "a1", "1 + a1", "a2"]];
const A2_2: Template = [["a1", "0", "0", "a4"], ["1", "b2", "1 + a1", "0"]];
const A3_2: Template = [["a1", "0", "0", "a4"], ["0", "b2", "1 + a1", "0"]];
const A4_2: Template = [["a1", "1", "1", "0"], ["b1", "b2", "1 + a1", "1"]];
const A5_2: Template = [["a1", "0", "0", "a4"], ["1", "1 + a1", "a1", "0"]];
const A6_2: Template = [["a1", "0", "0", "a4"], ["0", "1 + a1", "a1", "0"]];
const A7_2: Template = [["a1", "1", "1", "0"], ["b1", "1 + a1", "a1", "1"]];
const A8_2: Template = [["0", "1", "1", "1"], ["b1", "0", "0", "1"]];
const A9_2: Template = [["0", "0", "0", "1"], ["b1", "0", "0", "0"]];
const A10_2: Template = [["1", "1", "1", "0"], ["b1", "1", "1", "1"]];
const A11_2: Template = [["0", "1", "1", "0"], ["b1", "0", "0", "1"]];

const P_A1: &[&str] = &["a1", "a2", "a4", "b1"];
const P_A2: &[&str] = &["a1", "a4", "b2"];
const P_A4: &[&str] = &["b1", "b2"];
const P_A6: &[&str] = &["a1", "a4"];
const P_B1: &[&str] = &["b1"];
const P_A4_2: &[&str] = &["a1", "b1", "b2"];
const P_A7_2: &[&str] = &["a1", "b1"];

const BIG: &str = "(b1*t^3 - 3*t - 1)*(b1*t^2 + b1*t + 1)*(b1^2*t^3 + 6*b1*t^2 + 3*b1*t + b1 - 2)";
const BIG_2: &str = "(b1*t^3 + t + 1)*(b1*t^2 + b1*t + 1)";
const BIG_3: &str = "(b1 - t^3)*(b1*t^2 + b1*t + 1)*(b1^2*t^3 + b1 - 2)";

fn nz(e: &str) -> Predicate {
    Predicate::NonZero { expr: e.into() }
}

fn z(e: &str) -> Predicate {
    Predicate::Zero { expr: e.into() }
}

fn no_root(p: &str) -> Predicate {
    Predicate::NoRoot { poly: p.into() }
}

fn has_root(p: &str) -> Predicate {
    Predicate::HasRoot { poly: p.into() }
}

fn no_sol(num: &str, den: &str) -> Predicate {
    Predicate::NoSolution {
        num: num.into(),
        den: den.into(),
    }
}

fn has_sol(num: &str, den: &str) -> Predicate {
    Predicate::HasSolution {
        num: num.into(),
        den: den.into(),
    }
}

fn field_is(p: u64) -> Predicate {
    Predicate::FieldIs { p }
}

fn any(branches: Vec<Vec<Predicate>>) -> Predicate {
    Predicate::Any { branches }
}

// b1 = (2d+1)^2/(d^2+d+1) and b1 = (2d+1)^2 (d-1)/d^3, denominators cleared
fn sol_a10_1() -> (&'static str, &'static str) {
    ("b1*(d^2 + d + 1) - (2*d + 1)^2", "d^2 + d + 1")
}

fn sol_a10_2() -> (&'static str, &'static str) {
    ("b1*d^3 - (2*d + 1)^2*(d - 1)", "d^3")
}

// b1 = 1/(d^2+d+1) and b1 = (d+1)/d^3
fn sol_a8_2_1() -> (&'static str, &'static str) {
    ("b1*(d^2 + d + 1) - 1", "d^2 + d + 1")
}

fn sol_a8_2_2() -> (&'static str, &'static str) {
    ("b1*d^3 - (d + 1)", "d^3")
}

// a nontrivial cube root of unity, i.e. d^2 + d + 1 = 0 with d != 1
const CUBE: (&str, &str) = ("d^2 + d + 1", "d - 1");

fn simple_a1() -> Predicate {
    any(vec![vec![nz("b1 - 2*a1 - a2")], vec![nz("a4 + a1 + 2*a2")]])
}

fn simple_a3() -> Predicate {
    any(vec![
        vec![nz("b2 - 1 + a1"), nz("a4")],
        vec![z("b2 - 1 + a1"), nz("a4"), nz("a1 - 1"), nz("2*a1 - 1")],
    ])
}

fn simple_a4() -> Predicate {
    any(vec![vec![nz("b2 - 1")], vec![nz("4*b1 + 1"), z("b2 - 1")]])
}

fn aut_a10() -> Vec<Predicate> {
    vec![
        no_root(BIG),
        no_sol(sol_a10_1().0, sol_a10_1().1),
        no_sol(sol_a10_2().0, sol_a10_2().1),
    ]
}

fn aut_a11() -> Vec<Predicate> {
    vec![no_root("b1 - t^3"), nz("b1"), no_sol(CUBE.0, CUBE.1)]
}

fn aut_a8_2() -> Vec<Predicate> {
    vec![
        no_root(BIG_2),
        no_sol(sol_a8_2_1().0, sol_a8_2_1().1),
        no_sol(sol_a8_2_2().0, sol_a8_2_2().1),
    ]
}

fn aut_a9_2() -> Vec<Predicate> {
    vec![no_root("b1 + t^3"), no_sol(CUBE.0, CUBE.1)]
}

fn aut_a3_2() -> Predicate {
    any(vec![vec![nz("a4")], vec![field_is(2), z("a4"), z("b2")]])
}

fn aut_a9_3() -> Vec<Predicate> {
    vec![no_root(BIG_3), no_sol(sol_a10_1().0, sol_a10_1().1)]
}

struct Builder {
    class: CharClass,
    prop: Property,
    out: Vec<Family>,
}

impl Builder {
    fn add(&mut self, id: &str, params: &[&str], t: Template, constraints: Vec<Predicate>) {
        self.out.push(Family {
            id: id.to_string(),
            char_class: self.class,
            tags: vec![self.prop],
            params: params.iter().map(|s| s.to_string()).collect(),
            template: t.map(|row| row.map(str::to_string)),
            constraints,
        });
    }
}

pub(super) fn families(class: CharClass, prop: Property) -> Vec<Family> {
    let mut b = Builder {
        class,
        prop,
        out: Vec::new(),
    };
    use CharClass::*;
    use Property::*;
    match (class, prop) {
        (NotTwoThree, TrivDer) => {
            b.add("A_1", P_A1, A1, vec![]);
            b.add("A_2", P_A2, A2, vec![nz("a4")]);
            b.add("A_3", P_A2, A3, vec![nz("a4")]);
            b.add("A_4", P_A4, A4, vec![]);
            b.add("A_6", P_A6, A6, vec![nz("a4")]);
            b.add("A_7", P_A6, A7, vec![nz("a4")]);
            b.add("A_8", P_B1, A8, vec![]);
            b.add("A_10", P_B1, A10, vec![no_root(BIG)]);
            b.add("A_11", P_B1, A11, vec![no_root("b1 - t^3")]);
            b.add("A_12", P_B1, A12, vec![nz("b1")]);
        }
        (NotTwoThree, TrivAut) => {
            b.add("A_1", P_A1, A1, vec![]);
            b.add("A_2", P_A2, A2, vec![nz("a4")]);
            b.add("A_4", P_A4, A4, vec![]);
            b.add("A_6", P_A6, A6, vec![nz("a4")]);
            b.add("A_8", P_B1, A8, vec![]);
            b.add("A_10", P_B1, A10, aut_a10());
            b.add("A_11", P_B1, A11, aut_a11());
        }
        (NotTwoThree, Simple) => {
            b.add("A_1", P_A1, A1, vec![simple_a1()]);
            b.add("A_2", P_A2, A2, vec![nz("a4")]);
            b.add("A_3", P_A2, A3, vec![simple_a3()]);
            b.add("A_4", P_A4, A4, vec![simple_a4()]);
            b.add("A_6", P_A6, A6, vec![nz("a4")]);
            b.add("A_7", P_A6, A7, vec![nz("a4")]);
            b.add("A_8", P_B1, A8, vec![]);
            b.add("A_10", P_B1, A10, vec![no_root(BIG)]);
            b.add("A_11", P_B1, A11, vec![no_root("b1 - t^3"), nz("b1")]);
            b.add("A_12", P_B1, A12, vec![nz("b1")]);
        }
        (NotTwoThree, Star) => {
            b.add("A_1", P_A1, A1, vec![simple_a1()]);
            b.add("A_2", P_A2, A2, vec![nz("a4")]);
            b.add("A_4", P_A4, A4, vec![simple_a4()]);
            b.add("A_6", P_A6, A6, vec![nz("a4")]);
            b.add("A_8", P_B1, A8, vec![]);
            b.add("A_10", P_B1, A10, aut_a10());
            b.add("A_11", P_B1, A11, aut_a11());
        }
        (NotTwoThree, DerNotAut) => {
            b.add("A_3", P_A2, A3, vec![nz("a4")]);
            b.add("A_7", P_A6, A7, vec![nz("a4")]);
            b.add(
                "A_10",
                P_B1,
                A10,
                vec![
                    no_root(BIG),
                    any(vec![
                        vec![has_sol(sol_a10_1().0, sol_a10_1().1)],
                        vec![has_sol(sol_a10_2().0, sol_a10_2().1)],
                    ]),
                ],
            );
            b.add(
                "A_11",
                P_B1,
                A11,
                vec![no_root("b1 - t^3"), nz("b1"), has_sol(CUBE.0, CUBE.1)],
            );
            b.add("A_12", P_B1, A12, vec![nz("b1")]);
        }
        (NotTwoThree, AutNotDer) => {}

        (Two, TrivDer) => {
            b.add("A_{1,2}", P_A1, A1_2, vec![]);
            b.add("A_{2,2}", P_A2, A2_2, vec![any(vec![vec![nz("a4")], vec![nz("b2 - 1")]])]);
            b.add("A_{4,2}", P_A4_2, A4_2, vec![nz("b2 - 1")]);
            b.add(
                "A_{5,2}",
                P_A6,
                A5_2,
                vec![any(vec![vec![nz("a4")], vec![z("a1 - 1"), z("a4")]])],
            );
            b.add("A_{6,2}", P_A6, A6_2, vec![any(vec![vec![nz("a1 - 1")], vec![nz("a4")]])]);
            b.add("A_{7,2}", P_A7_2, A7_2, vec![nz("a1 - 1")]);
            b.add("A_{8,2}", P_B1, A8_2, vec![no_root(BIG_2)]);
            b.add("A_{9,2}", P_B1, A9_2, vec![no_root("b1 + t^3")]);
            b.add("A_{10,2}", P_B1, A10_2, vec![]);
        }
        (Two, TrivAut) => {
            b.add("A_{1,2}", P_A1, A1_2, vec![]);
            b.add("A_{2,2}", P_A2, A2_2, vec![nz("a4")]);
            b.add("A_{3,2}", P_A2, A3_2, vec![aut_a3_2()]);
            b.add("A_{4,2}", P_A4_2, A4_2, vec![z("b2 - 1")]);
            b.add("A_{5,2}", P_A6, A5_2, vec![nz("a4")]);
            b.add(
                "A_{6,2}",
                P_A6,
                A6_2,
                vec![any(vec![vec![nz("a4")], vec![field_is(2), z("a1"), z("a4")]])],
            );
            b.add("A_{7,2}", P_A7_2, A7_2, vec![z("a1 - 1")]);
            b.add("A_{8,2}", P_B1, A8_2, aut_a8_2());
            b.add("A_{9,2}", P_B1, A9_2, aut_a9_2());
            b.add("A_{11,2}", P_B1, A11_2, vec![field_is(2), z("b1")]);
        }
        (Two, Simple) => {
            b.add("A_{1,2}", P_A1, A1_2, vec![any(vec![vec![nz("a4 - a1")], vec![nz("b1 - a2")]])]);
            b.add(
                "A_{2,2}",
                P_A2,
                A2_2,
                vec![
                    nz("a4"),
                    any(vec![vec![nz("b2 - 1 - a1")], vec![z("b2 - 1 - a1"), z("a4 - b2")]]),
                ],
            );
            b.add(
                "A_{3,2}",
                P_A2,
                A3_2,
                vec![any(vec![
                    vec![nz("b2 - 1 - a1"), nz("a4")],
                    vec![z("b2"), z("a1 - 1"), nz("a4")],
                ])],
            );
            b.add(
                "A_{4,2}",
                P_A4_2,
                A4_2,
                vec![any(vec![
                    vec![nz("b2 - 1 - a1")],
                    vec![z("b2"), z("a1 - 1"), has_root("t^2 + t - b1")],
                ])],
            );
            b.add("A_{5,2}", P_A6, A5_2, vec![nz("a4")]);
            b.add("A_{6,2}", P_A6, A6_2, vec![nz("a4")]);
            b.add("A_{7,2}", P_A7_2, A7_2, vec![]);
            b.add("A_{8,2}", P_B1, A8_2, vec![no_root(BIG_2)]);
            b.add("A_{9,2}", P_B1, A9_2, vec![no_root("b1 + t^3")]);
            b.add("A_{11,2}", P_B1, A11_2, vec![has_root("t^2 - b1")]);
        }
        (Two, Star) => {}
        (Two, DerNotAut) => {
            b.add("A_{2,2}", P_A2, A2_2, vec![z("a4"), nz("b2 - 1")]);
            b.add("A_{4,2}", P_A4_2, A4_2, vec![nz("b2 - 1")]);
            b.add("A_{5,2}", P_A6, A5_2, vec![z("a1 - 1"), z("a4")]);
            b.add("A_{6,2}", P_A6, A6_2, vec![z("a4"), nz("a1 - 1")]);
            b.add("A_{7,2}", P_A7_2, A7_2, vec![nz("a1 - 1")]);
            b.add(
                "A_{8,2}",
                P_B1,
                A8_2,
                vec![
                    no_root(BIG_2),
                    any(vec![
                        vec![has_sol(sol_a8_2_1().0, sol_a8_2_1().1)],
                        vec![has_sol(sol_a8_2_2().0, sol_a8_2_2().1)],
                    ]),
                ],
            );
            b.add(
                "A_{9,2}",
                P_B1,
                A9_2,
                vec![no_root("b1 + t^3"), has_sol(CUBE.0, CUBE.1)],
            );
            b.add("A_{10,2}", P_B1, A10_2, vec![]);
        }
        (Two, AutNotDer) => {
            b.add("A_{3,2}", P_A2, A3_2, vec![aut_a3_2()]);
            b.add("A_{4,2}", P_A4_2, A4_2, vec![z("b2 - 1")]);
            b.add("A_{7,2}", P_A7_2, A7_2, vec![z("a1 - 1")]);
            b.add("A_{11,2}", P_B1, A11_2, vec![field_is(2), z("b1")]);
        }

        (Three, TrivDer) => {
            b.add("A_{1,3}", P_A1, A1, vec![]);
            b.add("A_{2,3}", P_A2, A2, vec![nz("a4")]);
            b.add("A_{3,3}", P_A2, A3, vec![nz("a4")]);
            b.add("A_{4,3}", P_A4, A4, vec![]);
            b.add("A_{6,3}", P_A6, A6, vec![nz("a4")]);
            b.add("A_{7,3}", P_A6, A7, vec![nz("a4")]);
            b.add("A_{8,3}", P_B1, A8, vec![]);
        }
        (Three, TrivAut) => {
            b.add("A_{1,3}", P_A1, A1, vec![]);
            b.add("A_{2,3}", P_A2, A2, vec![nz("a4")]);
            b.add("A_{4,3}", P_A4, A4, vec![]);
            b.add("A_{6,3}", P_A6, A6, vec![nz("a4")]);
            b.add("A_{8,3}", P_B1, A8, vec![]);
            b.add("A_{9,3}", P_B1, A10, aut_a9_3());
            b.add("A_{10,3}", P_B1, A11, aut_a11());
        }
        (Three, Simple) => {
            b.add("A_{1,3}", P_A1, A1, vec![simple_a1()]);
            b.add("A_{2,3}", P_A2, A2, vec![nz("a4")]);
            b.add("A_{3,3}", P_A2, A3, vec![simple_a3()]);
            b.add(
                "A_{4,3}",
                P_A4,
                A4,
                vec![any(vec![vec![nz("b2 - 1")], vec![nz("b1 + 1"), z("b2 - 1")]])],
            );
            b.add("A_{6,3}", P_A6, A6, vec![nz("a4")]);
            b.add("A_{7,3}", P_A6, A7, vec![]);
            b.add("A_{8,3}", P_B1, A8, vec![]);
            b.add("A_{9,3}", P_B1, A10, vec![no_root(BIG_3)]);
            b.add("A_{10,3}", P_B1, A11, vec![no_root("b1 - t^3"), nz("b1")]);
            b.add("A_{11,3}", P_B1, A12, vec![nz("b1")]);
            b.add("A_{12,3}", &[], A12_3, vec![]);
        }
        (Three, Star) => {}
        (Three, DerNotAut) => {
            b.add("A_{3,3}", P_A2, A3, vec![nz("a4")]);
            b.add("A_{7,3}", P_A6, A7, vec![nz("a4")]);
        }
        (Three, AutNotDer) => {
            b.add("A_{9,3}", P_B1, A10, aut_a9_3());
            b.add("A_{10,3}", P_B1, A11, aut_a11());
        }
    }
    b.out
}
